#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "gspline/extraction.hpp"
#include "gspline/mesh.hpp"

namespace gspline {

enum class Variant { C0, G1P, G1R };

const char* to_string(Variant v);
/// Parses "c0", "g1p", "g1r" (case-insensitive). Throws DomainError.
Variant parse_variant(const std::string& s);

/// Per-basis-function record of the constrained least-squares solve.
struct BasisDiagnostics {
  int basis = -1;
  int block = -1;
  int unknowns = 0;
  int constraints = 0;
  int rank = 0;
  int support_elements = 0;
  double ls_residual = 0.0;
  double constraint_residual = 0.0;
};

/// Per-block record (a block is a set of irregular elements solved jointly).
struct BlockDiagnostics {
  int block = -1;
  int elements = 0;
  int unknowns = 0;
  int constraints = 0;
  int rank = 0;
  int spoke_edges = 0;
};

struct SurfaceDiagnostics {
  std::vector<BlockDiagnostics> blocks;
  std::vector<BasisDiagnostics> basis;
};

/// A G-spline surface: control net, one extraction per element, and the
/// construction that produced it.
struct GSplineSurface {
  ControlNet net;
  Variant variant = Variant::C0;
  std::vector<ElementExtraction> elements;
  std::vector<ElementClass> element_class;
  SurfaceDiagnostics diagnostics;

  /// Cached (C^e)^T P^e and column sums per element; refreshed by
  /// update_geometry() whenever the extractions or positions change.
  std::vector<Eigen::MatrixX3d> bezier;
  std::vector<Eigen::VectorXd> weights;

  void update_geometry();
  std::size_t num_elements() const { return elements.size(); }
  std::size_t num_basis() const { return net.positions.size(); }
};

/// Point and parametric derivatives of the geometric map on one element.
struct MapEval {
  Vec3 x = Vec3::Zero();
  Vec3 x_xi = Vec3::Zero();
  Vec3 x_eta = Vec3::Zero();
  Vec3 x_xixi = Vec3::Zero();
  Vec3 x_xieta = Vec3::Zero();
  Vec3 x_etaeta = Vec3::Zero();
};

/// x^e(xi, eta) = sum_a P_a N_a (or R_a on rational elements).
MapEval map_point(const GSplineSurface& s, int element, double xi, double eta);

/// Midsurface frame and fundamental-form coefficients.
struct SurfaceFrame {
  Vec3 x;
  Vec3 a1;
  Vec3 a2;
  Vec3 a3;
  Eigen::Matrix2d a;  // covariant metric a_{ab}
  Eigen::Matrix2d b;  // curvature coefficients b_{ab}

  /// Principal curvatures (k1 >= k2) of the shape operator a^{-1} b.
  Eigen::Vector2d principal_curvatures() const;
};

/// Throws SingularParameterizationError when |a1 x a2| falls below
/// 1e-12 times the squared bounding-box diagonal of the control net.
SurfaceFrame frame(const GSplineSurface& s, int element, double xi, double eta);

double bounding_box_diagonal(const ControlNet& net);

/// Tensor sampling of every element on a (res+1)^2 grid.
struct BezierMeshSample {
  int resolution = 0;
  std::vector<Vec3> points;           // element-major, (res+1)^2 per element
  std::vector<Quad> quads;            // indices into points
  std::vector<std::vector<Vec3>> boundary_polylines;  // 4 per element
};

BezierMeshSample sample_bezier_mesh(const GSplineSurface& s, int resolution);
void write_sample_obj(const std::string& path, const BezierMeshSample& sample);
/// CSV rows: element, xi, eta, x, y, z, n_x, n_y, n_z, k1, k2.
void write_frames_csv(const std::string& path, const GSplineSurface& s, int resolution);

}  // namespace gspline
