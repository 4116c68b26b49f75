#pragma once

#include <Eigen/Core>

namespace gspline {

/// Values and first/second parametric derivatives of a family of functions
/// at one point of the parent element. Every vector has the same length.
struct BasisEval {
  Eigen::VectorXd value;
  Eigen::VectorXd d_xi;
  Eigen::VectorXd d_eta;
  Eigen::VectorXd d_xixi;
  Eigen::VectorXd d_xieta;
  Eigen::VectorXd d_etaeta;

  void resize(Eigen::Index n);
  Eigen::Index size() const { return value.size(); }
};

/// Position of Bernstein coefficient (i, j) (0-based, i along xi) in the
/// flattened (p+1)^2 vector.
constexpr int bezier_index(int p, int i, int j) { return (p + 1) * j + i; }

/// Univariate Bernstein polynomials of degree p and their first two
/// derivatives at t. Output arrays hold p+1 entries.
void bernstein_1d(int p, double t, double* value, double* d1, double* d2);

/// All (p+1)^2 tensor-product Bernstein polynomials and derivatives.
/// Throws DomainError when (xi, eta) leaves the unit square.
BasisEval bernstein_eval(int p, double xi, double eta);

/// Bivariate coefficients of degree p re-expressed at degree p+1.
Eigen::VectorXd degree_elevate(const Eigen::VectorXd& coeffs, int p);
/// Bi-cubic (16) to bi-quintic (36) coefficients.
Eigen::VectorXd degree_elevate_2(const Eigen::VectorXd& coeffs16);
/// Matrix E with elevated = E * coeffs, mapping degree p to degree q >= p.
Eigen::MatrixXd elevation_matrix(int p, int q);

/// Bernstein coefficients of the product of two univariate Bernstein forms.
Eigen::VectorXd bernstein_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

double binomial(int n, int k);

}  // namespace gspline
