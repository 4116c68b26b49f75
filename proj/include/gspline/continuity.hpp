#pragma once

#include <vector>

#include "gspline/surface.hpp"

namespace gspline {

/// Two-element frame of an interior edge.
///
/// Vertex 1 sits at the local origin of both elements. Element "cur" is
/// anchored at vertex 1 with its first axis along the edge; element "prev"
/// is anchored at vertex 1 with its second axis along the edge. Points on the
/// edge are cur(v, 0) = prev(0, v).
struct EdgeFrame {
  int edge = -1;
  int v1 = -1;
  int v2 = -1;
  int face_cur = -1;
  int corner_cur = -1;
  int face_prev = -1;
  int corner_prev = -1;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

/// cos(a pi / mu) with a = 2 for interior and a = 1 for boundary vertices.
double vertex_omega(const CNet& cnet, int v);

/// Frame with an explicit vertex 1. Throws DomainError on boundary edges.
EdgeFrame edge_frame(const CNet& cnet, int edge, int vertex1);
/// Vertex 1 is the extraordinary endpoint; the lower index when both or
/// neither endpoint is extraordinary.
EdgeFrame spoke_edge_frame(const CNet& cnet, int edge);

/// Largest G1 residual d_xi N^{prev}(0,v) + b(v) d_xi N^{cur}(v,0) +
/// d_eta N^{cur}(v,0) over all basis functions and `samples` values of v,
/// divided by the largest gradient component seen on the two elements.
double g1_residual(const GSplineSurface& s, int edge, int samples = 50);

/// Largest angle (radians) between the surface normals of the two elements
/// sampled along the edge.
double normal_jump(const GSplineSurface& s, int edge, int samples = 21);

/// Largest distance between the mapped edge points of the two elements.
double watertight_residual(const GSplineSurface& s, int edge, int samples = 21);

/// Largest |sum_a N_a - 1| (polynomial basis) at the Gauss points of every
/// element, or of the rationalized basis when `rationalized` is set.
double partition_of_unity_error(const GSplineSurface& s, bool rationalized);

/// Smallest and largest value of the polynomial denominator sum_a N_a on
/// rational elements at their Gauss points (1, 1 when none is rational).
std::pair<double, double> denominator_range(const GSplineSurface& s);

/// Largest |column sum - 1| over all extraction matrices.
double column_sum_error(const GSplineSurface& s);

/// Smallest over largest singular value of the matrix of all basis functions
/// sampled at 4 x 4 interior points of every element.
double collocation_rank_ratio(const GSplineSurface& s);

struct EdgeResidual {
  int edge = -1;
  double value = 0.0;
};

/// Full invariant suite of a finished surface.
struct CheckReport {
  std::vector<EdgeResidual> g1;          // spoke edges (G1 constructions)
  std::vector<EdgeResidual> normal;      // spoke edges
  std::vector<EdgeResidual> c1;          // irregular / transition edges
  std::vector<EdgeResidual> c2;          // edges away from irregular elements
  double max_g1 = 0.0;
  double max_normal_jump = 0.0;
  double max_c1 = 0.0;
  double max_c2 = 0.0;
  double max_watertight = 0.0;
  double column_sum_error = 0.0;
  double partition_of_unity_error = 0.0;
  double denominator_min = 1.0;
  double denominator_max = 1.0;
  double rank_ratio = 0.0;
};

CheckReport check_surface(const GSplineSurface& s);

}  // namespace gspline
