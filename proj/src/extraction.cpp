#include "gspline/extraction.hpp"

#include <algorithm>
#include <sstream>

#include "gspline/errors.hpp"

namespace gspline {

int ElementExtraction::row_of(int basis_id) const {
  auto it = std::find(basis.begin(), basis.end(), basis_id);
  return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

BasisEval evaluate_basis(const ElementExtraction& ext, double xi, double eta) {
  const BasisEval b = bernstein_eval(ext.degree, xi, eta);
  BasisEval out;
  out.value = ext.coeffs * b.value;
  out.d_xi = ext.coeffs * b.d_xi;
  out.d_eta = ext.coeffs * b.d_eta;
  out.d_xixi = ext.coeffs * b.d_xixi;
  out.d_xieta = ext.coeffs * b.d_xieta;
  out.d_etaeta = ext.coeffs * b.d_etaeta;
  return out;
}

BasisEval rationalize(const BasisEval& n, int element) {
  const double w = n.value.sum();
  if (!(w > 0.0)) {
    std::ostringstream msg;
    msg << "rational denominator " << w << " is not positive";
    if (element >= 0) msg << " on element " << element;
    throw DegenerateBasisError(msg.str());
  }
  const double w1 = n.d_xi.sum();
  const double w2 = n.d_eta.sum();
  const double w11 = n.d_xixi.sum();
  const double w12 = n.d_xieta.sum();
  const double w22 = n.d_etaeta.sum();

  BasisEval r;
  r.value = n.value / w;
  r.d_xi = (n.d_xi - r.value * w1) / w;
  r.d_eta = (n.d_eta - r.value * w2) / w;
  r.d_xixi = (n.d_xixi - 2.0 * r.d_xi * w1 - r.value * w11) / w;
  r.d_xieta = (n.d_xieta - r.d_xi * w2 - r.d_eta * w1 - r.value * w12) / w;
  r.d_etaeta = (n.d_etaeta - 2.0 * r.d_eta * w2 - r.value * w22) / w;
  return r;
}

BasisEval evaluate_element_basis(const ElementExtraction& ext, double xi, double eta) {
  BasisEval n = evaluate_basis(ext, xi, eta);
  return ext.rational ? rationalize(n, ext.element) : n;
}

Eigen::MatrixX3d bezier_points(const ElementExtraction& ext, const std::vector<Vec3>& positions) {
  Eigen::MatrixX3d P(ext.basis.size(), 3);
  for (std::size_t a = 0; a < ext.basis.size(); ++a) P.row(a) = positions[ext.basis[a]].transpose();
  return ext.coeffs.transpose() * P;
}

Eigen::VectorXd column_sums(const ElementExtraction& ext) {
  return ext.coeffs.colwise().sum().transpose();
}

}  // namespace gspline

namespace gspline {

namespace {
// Canonical direction of the local s and t axes for each anchoring corner.
constexpr int kAxis[4][2][2] = {
    {{1, 0}, {0, 1}},
    {{0, 1}, {-1, 0}},
    {{-1, 0}, {0, -1}},
    {{0, -1}, {1, 0}},
};
constexpr double kOrigin[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}  // namespace

Eigen::Vector2d corner_frame_point(int k, double s, double t) {
  return {kOrigin[k][0] + kAxis[k][0][0] * s + kAxis[k][1][0] * t,
          kOrigin[k][1] + kAxis[k][0][1] * s + kAxis[k][1][1] * t};
}

int corner_frame_index(int p, int k, int i, int j) {
  switch (k & 3) {
    case 0: return bezier_index(p, i, j);
    case 1: return bezier_index(p, p - j, i);
    case 2: return bezier_index(p, p - i, p - j);
    default: return bezier_index(p, j, p - i);
  }
}

BasisEval to_corner_frame(const BasisEval& c, int k) {
  const double r00 = kAxis[k][0][0], r10 = kAxis[k][0][1];  // s axis
  const double r01 = kAxis[k][1][0], r11 = kAxis[k][1][1];  // t axis
  BasisEval out;
  out.value = c.value;
  out.d_xi = r00 * c.d_xi + r10 * c.d_eta;
  out.d_eta = r01 * c.d_xi + r11 * c.d_eta;
  out.d_xixi = r00 * r00 * c.d_xixi + 2 * r00 * r10 * c.d_xieta + r10 * r10 * c.d_etaeta;
  out.d_etaeta = r01 * r01 * c.d_xixi + 2 * r01 * r11 * c.d_xieta + r11 * r11 * c.d_etaeta;
  out.d_xieta = r00 * r01 * c.d_xixi + (r00 * r11 + r10 * r01) * c.d_xieta + r10 * r11 * c.d_etaeta;
  return out;
}

}  // namespace gspline
