#include "gspline/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "gspline/errors.hpp"

namespace gspline {

EigenResult solve_generalized_eigen(const Eigen::SparseMatrix<double>& K, const Eigen::SparseMatrix<double>& M,
                                    int k, double tol, int max_iter) {
  const Eigen::Index n = K.rows();
  if (k < 1 || k > n) throw DomainError("requested eigenpair count is out of range");
  EigenResult out;

  // Small problems: dense generalized solver.
  if (n <= std::max<Eigen::Index>(2 * k + 8, 64)) {
    const Eigen::MatrixXd Kd(K), Md(M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kd, Md);
    if (es.info() != Eigen::Success) throw EigensolverError("dense generalized eigensolver failed");
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
  } else {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
    if (ldlt.info() != Eigen::Success) throw EigensolverError("stiffness factorization failed");
    const Eigen::Index q = std::min<Eigen::Index>(n, std::max(2 * k, k + 8));
    // Deterministic start block.
    Eigen::MatrixXd X(n, q);
    for (Eigen::Index j = 0; j < q; ++j)
      for (Eigen::Index i = 0; i < n; ++i) X(i, j) = std::sin(0.37 * (i + 1) * (j + 1) + 0.11 * j) + (j == 0);
    std::ostringstream history;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
      const Eigen::MatrixXd Y = ldlt.solve(M * X);
      const Eigen::MatrixXd Kr = Y.transpose() * (K * Y);
      const Eigen::MatrixXd Mr = Y.transpose() * (M * Y);
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Kr + Kr.transpose()),
                                                                   0.5 * (Mr + Mr.transpose()));
      if (es.info() != Eigen::Success) throw EigensolverError("Rayleigh-Ritz projection failed");
      X = Y * es.eigenvectors();
      out.values = es.eigenvalues().head(k);
      out.iterations = it;
      double worst = 0.0;
      for (int j = 0; j < k; ++j) {
        const Eigen::VectorXd Kv = K * X.col(j);
        worst = std::max(worst, (Kv - out.values[j] * (M * X.col(j))).norm() / Kv.norm());
      }
      history << it << ':' << worst << ' ';
      if (worst < tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw EigensolverError("subspace iteration did not converge; residual history " + history.str());
    out.vectors = X.leftCols(k);
  }

  out.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd Kv = K * out.vectors.col(j);
    out.residuals[j] = (Kv - out.values[j] * (M * out.vectors.col(j))).norm() / Kv.norm();
  }
  return out;
}

std::vector<double> unit_square_spectrum(int k) {
  std::vector<double> v;
  const int lim = k + 2;
  for (int i = 1; i <= lim; ++i)
    for (int j = 1; j <= lim; ++j) v.push_back((i * i + j * j) * std::numbers::pi * std::numbers::pi);
  std::sort(v.begin(), v.end());
  v.resize(k);
  return v;
}

EigenReport membrane_eigenvalues(const GSplineSurface& s, int k, MassKind kind, ExecPolicy policy) {
  const GalerkinSystem sys = assemble_membrane_eigen(s, kind, policy);
  const EigenResult r = solve_generalized_eigen(sys.K, sys.M, k);
  EigenReport rep;
  rep.variant = s.variant;
  rep.mass = kind;
  rep.dofs = sys.dofs.size();
  rep.exact = unit_square_spectrum(k);
  rep.iterations = r.iterations;
  for (int j = 0; j < k; ++j) {
    rep.values.push_back(r.values[j]);
    rep.relative_error.push_back(std::abs(r.values[j] - rep.exact[j]) / rep.exact[j]);
    rep.residuals.push_back(r.residuals[j]);
  }
  return rep;
}

}  // namespace gspline
