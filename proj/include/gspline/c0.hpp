#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gspline/surface.hpp"

namespace gspline {

/// Affine combination of control points, sorted by vertex index.
using Stencil = std::vector<std::pair<int, double>>;

/// The 16 bi-cubic Bezier points of every face as stencils over control
/// points, in canonical Bernstein order.
std::vector<std::array<Stencil, 16>> c0_bezier_stencils(const CNet& cnet);

/// Preliminary construction: bi-cubic on every element, C^2 across non-spoke
/// edges and C^0 across spoke edges.
GSplineSurface build_c0(const ControlNet& net);

/// Largest jump of the 0th, 1st (cross-edge) or 2nd (cross-edge) derivative
/// of any supported basis function across an interior edge, sampled at
/// `samples` points in the shared parameterization. Throws DomainError on
/// boundary edges.
double geometry_continuity_residual(const GSplineSurface& s, int edge, int order, int samples = 21);

}  // namespace gspline
