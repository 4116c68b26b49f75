#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gspline {

/// Factorization for   min ||F x - f||  subject to  G x = g,
/// reusable across right-hand sides.
///
/// Redundant rows of G are removed by a column-pivoted QR of G^T with a
/// relative rank cutoff. Among all minimizers the one of smallest norm is
/// returned, so the solution depends linearly on (g, f).
class ConstrainedLeastSquares {
public:
  ConstrainedLeastSquares(const Eigen::MatrixXd& G, const Eigen::MatrixXd& F, double rank_tol = 1e-10);

  /// One column per right-hand side. Throws InfeasibleConstraintError naming
  /// the inconsistent equality rows.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& g, const Eigen::MatrixXd& f) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& g, const Eigen::VectorXd& f) const;

  int rank() const { return rank_; }
  Eigen::Index unknowns() const { return n_; }
  Eigen::Index constraints() const { return G_.rows(); }

  /// Rows of G whose right-hand side in `g` contradicts the retained rows.
  std::vector<int> inconsistent_rows(const Eigen::VectorXd& g, const Eigen::VectorXd& x) const;

private:
  Eigen::MatrixXd G_;
  Eigen::MatrixXd F_;
  Eigen::Index n_ = 0;
  int rank_ = 0;
  Eigen::MatrixXd Q1_;                   // range of G^T
  Eigen::MatrixXd Q2_;                   // null space of G
  Eigen::MatrixXd R11_;                  // r x r upper triangular
  Eigen::VectorXi perm_;                 // pivoted order of G rows
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> fz_;
  bool have_fz_ = false;
};

/// Single right-hand side convenience wrapper.
Eigen::VectorXd solve_constrained_ls(const Eigen::MatrixXd& G, const Eigen::VectorXd& g,
                                     const Eigen::MatrixXd& F, const Eigen::VectorXd& f,
                                     double rank_tol = 1e-10);

}  // namespace gspline
