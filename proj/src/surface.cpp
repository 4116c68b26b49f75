#include "gspline/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/Dense>

#include "gspline/errors.hpp"

namespace gspline {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::C0: return "c0";
    case Variant::G1P: return "g1p";
    case Variant::G1R: return "g1r";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "c0") return Variant::C0;
  if (l == "g1p") return Variant::G1P;
  if (l == "g1r") return Variant::G1R;
  throw DomainError("unknown construction '" + s + "' (expected c0, g1p or g1r)");
}

void GSplineSurface::update_geometry() {
  bezier.resize(elements.size());
  weights.resize(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    bezier[e] = bezier_points(elements[e], net.positions);
    weights[e] = column_sums(elements[e]);
  }
}

MapEval map_point(const GSplineSurface& s, int element, double xi, double eta) {
  if (element < 0 || static_cast<std::size_t>(element) >= s.elements.size())
    throw DomainError("element index out of range");
  const ElementExtraction& ext = s.elements[element];
  const BasisEval b = bernstein_eval(ext.degree, xi, eta);
  const Eigen::MatrixX3d& B = s.bezier[element];
  MapEval m;
  m.x = B.transpose() * b.value;
  m.x_xi = B.transpose() * b.d_xi;
  m.x_eta = B.transpose() * b.d_eta;
  m.x_xixi = B.transpose() * b.d_xixi;
  m.x_xieta = B.transpose() * b.d_xieta;
  m.x_etaeta = B.transpose() * b.d_etaeta;
  if (!ext.rational) return m;

  // Quotient rule on x = X / W with X = sum B_k b_k, W = sum w_k b_k.
  const Eigen::VectorXd& w = s.weights[element];
  const double W = w.dot(b.value);
  if (!(W > 0.0)) {
    std::ostringstream msg;
    msg << "rational denominator " << W << " is not positive on element " << element;
    throw DegenerateBasisError(msg.str());
  }
  const double W1 = w.dot(b.d_xi), W2 = w.dot(b.d_eta);
  const double W11 = w.dot(b.d_xixi), W12 = w.dot(b.d_xieta), W22 = w.dot(b.d_etaeta);
  MapEval r;
  r.x = m.x / W;
  r.x_xi = (m.x_xi - r.x * W1) / W;
  r.x_eta = (m.x_eta - r.x * W2) / W;
  r.x_xixi = (m.x_xixi - 2.0 * r.x_xi * W1 - r.x * W11) / W;
  r.x_xieta = (m.x_xieta - r.x_xi * W2 - r.x_eta * W1 - r.x * W12) / W;
  r.x_etaeta = (m.x_etaeta - 2.0 * r.x_eta * W2 - r.x * W22) / W;
  return r;
}

double bounding_box_diagonal(const ControlNet& net) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Vec3& p : net.positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Eigen::Vector2d SurfaceFrame::principal_curvatures() const {
  // Eigenvalues of a^{-1} b via the symmetric form a^{-1/2} b a^{-1/2}.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(b, a, Eigen::EigenvaluesOnly);
  const Eigen::Vector2d k = es.eigenvalues();
  return {k.maxCoeff(), k.minCoeff()};
}

SurfaceFrame frame(const GSplineSurface& s, int element, double xi, double eta) {
  const MapEval m = map_point(s, element, xi, eta);
  SurfaceFrame f;
  f.x = m.x;
  f.a1 = m.x_xi;
  f.a2 = m.x_eta;
  const Vec3 n = f.a1.cross(f.a2);
  const double diag = bounding_box_diagonal(s.net);
  if (n.norm() <= 1e-12 * diag * diag) {
    std::ostringstream msg;
    msg << "degenerate tangents on element " << element << " at (" << xi << ", " << eta << ")";
    throw SingularParameterizationError(msg.str());
  }
  f.a3 = n.normalized();
  f.a << f.a1.dot(f.a1), f.a1.dot(f.a2), f.a2.dot(f.a1), f.a2.dot(f.a2);
  f.b << m.x_xixi.dot(f.a3), m.x_xieta.dot(f.a3), m.x_xieta.dot(f.a3), m.x_etaeta.dot(f.a3);
  return f;
}

BezierMeshSample sample_bezier_mesh(const GSplineSurface& s, int resolution) {
  if (resolution < 1) throw DomainError("sampling resolution must be positive");
  BezierMeshSample out;
  out.resolution = resolution;
  const int n = resolution + 1;
  const std::size_t ne = s.num_elements();
  out.points.resize(ne * n * n);
  out.boundary_polylines.resize(4 * ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t base = e * n * n;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out.points[base + j * n + i] =
            map_point(s, static_cast<int>(e), double(i) / resolution, double(j) / resolution).x;
    for (int j = 0; j < resolution; ++j)
      for (int i = 0; i < resolution; ++i) {
        const int a = static_cast<int>(base + j * n + i);
        out.quads.push_back({a, a + 1, a + 1 + n, a + n});
      }
    // Sides in the same order as the face's half-edges.
    for (int k = 0; k < 4; ++k) {
      auto& poly = out.boundary_polylines[4 * e + k];
      for (int t = 0; t < n; ++t) {
        const Eigen::Vector2d uv = corner_frame_point(k, double(t) / resolution, 0.0);
        const int i = static_cast<int>(std::lround(uv.x() * resolution));
        const int j = static_cast<int>(std::lround(uv.y() * resolution));
        poly.push_back(out.points[base + j * n + i]);
      }
    }
  }
  return out;
}

void write_sample_obj(const std::string& path, const BezierMeshSample& sample) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << std::setprecision(17);
  for (const Vec3& p : sample.points) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const Quad& q : sample.quads)
    out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_frames_csv(const std::string& path, const GSplineSurface& s, int resolution) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << std::setprecision(17);
  out << "element,xi,eta,x,y,z,n_x,n_y,n_z,k1,k2\n";
  for (std::size_t e = 0; e < s.num_elements(); ++e)
    for (int j = 0; j <= resolution; ++j)
      for (int i = 0; i <= resolution; ++i) {
        const double xi = double(i) / resolution, eta = double(j) / resolution;
        const SurfaceFrame f = frame(s, static_cast<int>(e), xi, eta);
        const Eigen::Vector2d k = f.principal_curvatures();
        out << e << ',' << xi << ',' << eta << ',' << f.x.x() << ',' << f.x.y() << ','
            << f.x.z() << ',' << f.a3.x() << ',' << f.a3.y() << ',' << f.a3.z() << ',' << k[0]
            << ',' << k[1] << '\n';
      }
}

}  // namespace gspline
