#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gspline/continuity.hpp"
#include "gspline/parallel.hpp"
#include "gspline/surface.hpp"

namespace gspline {

/// Bi-quintic coefficients (rows as in the C0 extraction, 36 columns) of a
/// bi-cubic element.
Eigen::MatrixXd elevate_irregular(const ElementExtraction& c0_element);

/// Seven G1 equations of a spoke edge acting on the stacked canonical
/// bi-quintic coefficients [c^{prev} (36); c^{cur} (36)]:
/// six Bernstein coefficients of
///   d_xi N^{prev}(0,v) + b(v) d_xi N^{cur}(v,0) + d_eta N^{cur}(v,0)
/// with b(v) = -2 w1 (1-v)^2 + 2 w2 v^2, followed by the condition that the
/// shared boundary curve is quartic. All right-hand sides are zero.
Eigen::Matrix<double, 7, 72> g1_edge_equations(const EdgeFrame& frame);

/// Canonical bi-quintic indices of the two outermost coefficient rows along
/// side k of an element (side k runs from corner k to corner k+1).
std::array<int, 12> interface_indices(int side);

/// Selection matrix of the 12 coefficients fixed by interface_indices(side).
Eigen::Matrix<double, 12, 36> c1_interface_equations(int side);

/// Thirty differences along xi followed by thirty along eta.
Eigen::Matrix<double, 60, 36> fairing_equations();

/// Upgrades a C0 surface to G1 across every spoke edge.
///
/// G1P solves one constrained system per block of irregular elements joined
/// by spoke edges, shared by every basis function touching the block.
/// G1R solves per basis function over the irregular elements of its C0
/// support and marks irregular elements rational.
GSplineSurface build_g1(const GSplineSurface& c0, Variant variant,
                        ExecPolicy policy = ExecPolicy::Parallel);

/// build_c0 followed by build_g1 when the variant asks for it.
GSplineSurface build_surface(const ControlNet& net, Variant variant,
                             ExecPolicy policy = ExecPolicy::Parallel);

/// Connected components of irregular elements under adjacency across spoke
/// edges, numbered by their smallest element. Entry -1 for other elements.
std::vector<int> irregular_blocks(const CNet& cnet, const std::vector<ElementClass>& classes);

}  // namespace gspline
