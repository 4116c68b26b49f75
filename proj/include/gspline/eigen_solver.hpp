#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gspline/galerkin.hpp"

namespace gspline {

struct EigenResult {
  Eigen::VectorXd values;         // ascending
  Eigen::MatrixXd vectors;        // active coefficients, M-orthonormal columns
  Eigen::VectorXd residuals;      // ||K v - l M v|| / ||K v||
  int iterations = 0;
};

/// k smallest eigenpairs of K v = l M v (K, M symmetric positive definite)
/// by shift-invert block subspace iteration with Rayleigh-Ritz projection.
/// Throws EigensolverError with the residual history when `max_iter` is hit.
EigenResult solve_generalized_eigen(const Eigen::SparseMatrix<double>& K, const Eigen::SparseMatrix<double>& M,
                                    int k, double tol = 1e-8, int max_iter = 1000);

struct EigenReport {
  Variant variant = Variant::C0;
  MassKind mass = MassKind::Consistent;
  std::size_t dofs = 0;
  std::vector<double> values;
  std::vector<double> exact;             // (i^2 + j^2) pi^2 in ascending order
  std::vector<double> relative_error;
  std::vector<double> residuals;
  int iterations = 0;
};

/// First k Dirichlet eigenvalues of the membrane on a planar surface.
EigenReport membrane_eigenvalues(const GSplineSurface& s, int k, MassKind kind,
                                 ExecPolicy policy = ExecPolicy::Parallel);

/// Smallest k values of (i^2 + j^2) pi^2, i, j >= 1.
std::vector<double> unit_square_spectrum(int k);

}  // namespace gspline
