#pragma once

#include <vector>

#include "gspline/c0.hpp"
#include "gspline/mesh.hpp"
#include "gspline/parallel.hpp"

namespace gspline {

/// Refinement masks: one stencil per new control point. Old vertices keep
/// their indices, face points follow in face order, then edge points in edge
/// order. Every mask sums to one.
struct RefinementMasks {
  std::size_t n_vertices = 0;
  std::vector<Quad> faces;
  std::vector<Stencil> masks;
};

RefinementMasks refinement_masks(const CNet& cnet);

/// One level of uniform quadrisection with the extended Catmull-Clark rules.
ControlNet refine(const ControlNet& net, ExecPolicy policy = ExecPolicy::Parallel);

struct RefineLevel {
  int level = 0;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::size_t extraordinary = 0;
};

/// Iterated refinement. Throws ResourceError for more than 8 levels. When
/// `log` is given it receives one entry per level, level 0 included.
ControlNet refine_n(const ControlNet& net, int levels, std::vector<RefineLevel>* log = nullptr,
                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace gspline
