#include "gspline/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gspline/errors.hpp"

namespace gspline {

namespace {
constexpr double kDomainSlack = 1e-12;
constexpr int kMaxDegree = 8;
}  // namespace

void BasisEval::resize(Eigen::Index n) {
  for (Eigen::VectorXd* v : {&value, &d_xi, &d_eta, &d_xixi, &d_xieta, &d_etaeta}) v->setZero(n);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void bernstein_1d(int p, double t, double* value, double* d1, double* d2) {
  // B_i^p, then derivatives via the degree p-1 and p-2 families.
  double low[kMaxDegree + 1];
  auto eval = [t](int q, double* out) {
    for (int i = 0; i <= q; ++i)
      out[i] = binomial(q, i) * std::pow(t, i) * std::pow(1.0 - t, q - i);
  };
  eval(p, value);
  for (int i = 0; i <= p; ++i) d1[i] = d2[i] = 0.0;
  if (p >= 1) {
    eval(p - 1, low);
    for (int i = 0; i <= p; ++i) {
      const double a = i >= 1 ? low[i - 1] : 0.0;
      const double b = i <= p - 1 ? low[i] : 0.0;
      d1[i] = p * (a - b);
    }
  }
  if (p >= 2) {
    eval(p - 2, low);
    for (int i = 0; i <= p; ++i) {
      const double a = (i >= 2) ? low[i - 2] : 0.0;
      const double b = (i >= 1 && i - 1 <= p - 2) ? low[i - 1] : 0.0;
      const double c = (i <= p - 2) ? low[i] : 0.0;
      d2[i] = p * (p - 1) * (a - 2.0 * b + c);
    }
  }
}

BasisEval bernstein_eval(int p, double xi, double eta) {
  if (p < 0 || p > kMaxDegree) throw DomainError("unsupported Bernstein degree");
  if (!(xi >= -kDomainSlack && xi <= 1 + kDomainSlack && eta >= -kDomainSlack &&
        eta <= 1 + kDomainSlack)) {
    std::ostringstream msg;
    msg << "parametric point (" << xi << ", " << eta << ") outside the parent element";
    throw DomainError(msg.str());
  }
  xi = std::clamp(xi, 0.0, 1.0);
  eta = std::clamp(eta, 0.0, 1.0);
  double u[kMaxDegree + 1], du[kMaxDegree + 1], ddu[kMaxDegree + 1];
  double v[kMaxDegree + 1], dv[kMaxDegree + 1], ddv[kMaxDegree + 1];
  bernstein_1d(p, xi, u, du, ddu);
  bernstein_1d(p, eta, v, dv, ddv);
  BasisEval out;
  out.resize((p + 1) * (p + 1));
  for (int j = 0; j <= p; ++j)
    for (int i = 0; i <= p; ++i) {
      const int k = bezier_index(p, i, j);
      out.value[k] = u[i] * v[j];
      out.d_xi[k] = du[i] * v[j];
      out.d_eta[k] = u[i] * dv[j];
      out.d_xixi[k] = ddu[i] * v[j];
      out.d_xieta[k] = du[i] * dv[j];
      out.d_etaeta[k] = u[i] * ddv[j];
    }
  return out;
}

Eigen::MatrixXd elevation_matrix(int p, int q) {
  // Univariate chain p -> p+1 -> ... -> q, then tensor product.
  Eigen::MatrixXd uni = Eigen::MatrixXd::Identity(p + 1, p + 1);
  for (int r = p; r < q; ++r) {
    Eigen::MatrixXd step = Eigen::MatrixXd::Zero(r + 2, r + 1);
    for (int i = 0; i <= r + 1; ++i) {
      const double a = static_cast<double>(i) / (r + 1);
      if (i >= 1) step(i, i - 1) = a;
      if (i <= r) step(i, i) = 1.0 - a;
    }
    uni = step * uni;
  }
  const int n_in = p + 1;
  const int n_out = q + 1;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n_out * n_out, n_in * n_in);
  for (int j = 0; j < n_out; ++j)
    for (int i = 0; i < n_out; ++i)
      for (int l = 0; l < n_in; ++l)
        for (int k = 0; k < n_in; ++k)
          E(bezier_index(q, i, j), bezier_index(p, k, l)) = uni(i, k) * uni(j, l);
  return E;
}

Eigen::VectorXd degree_elevate(const Eigen::VectorXd& coeffs, int p) {
  if (coeffs.size() != (p + 1) * (p + 1)) throw DomainError("coefficient count does not match degree");
  return elevation_matrix(p, p + 1) * coeffs;
}

Eigen::VectorXd degree_elevate_2(const Eigen::VectorXd& coeffs16) {
  if (coeffs16.size() != 16) throw DomainError("expected 16 bi-cubic coefficients");
  return degree_elevate(degree_elevate(coeffs16, 3), 4);
}

Eigen::VectorXd bernstein_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.size()) - 1;
  const int n = static_cast<int>(b.size()) - 1;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m + n + 1);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      c[i + j] += binomial(m, i) * binomial(n, j) / binomial(m + n, i + j) * a[i] * b[j];
  return c;
}

}  // namespace gspline
