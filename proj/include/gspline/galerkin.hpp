#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gspline/parallel.hpp"
#include "gspline/surface.hpp"

namespace gspline {

/// Exact solution of -Laplace(u) = source on a planar domain.
struct ManufacturedSolution {
  std::function<double(double, double)> u;
  std::function<Eigen::Vector2d(double, double)> grad;
  std::function<double(double, double)> source;
};

/// u = sin(pi x) sin(pi y), source 2 pi^2 sin(pi x) sin(pi y).
ManufacturedSolution sine_solution();
/// u = x, source 0.
ManufacturedSolution linear_solution();
/// u = 0, source 0.
ManufacturedSolution zero_solution();

/// Basis functions and derivatives pushed to the physical plane (z is
/// ignored) at one parametric point of an element.
struct PhysicalEval {
  Eigen::VectorXd N;
  Eigen::VectorXd dNdx;
  Eigen::VectorXd dNdy;
  double x = 0.0;
  double y = 0.0;
  double jacobian = 0.0;
};

PhysicalEval physical_basis(const GSplineSurface& s, int element, double xi, double eta);

/// True for every basis function with a nonzero trace on the domain
/// boundary (some coefficient on a boundary row above 1e-12).
std::vector<bool> boundary_functions(const GSplineSurface& s);

struct GalerkinSystem {
  Eigen::SparseMatrix<double> K_full;   // all basis functions
  Eigen::SparseMatrix<double> M_full;   // consistent mass, all basis functions
  Eigen::VectorXd load_full;
  std::vector<int> dofs;                // active -> global
  std::vector<int> active;              // global -> active or -1
  Eigen::VectorXd fixed;                // global coefficients of the boundary lifting
  Eigen::SparseMatrix<double> K;        // active block
  Eigen::SparseMatrix<double> M;        // active block (consistent or lumped)
  Eigen::VectorXd rhs;                  // load minus lifting contribution
  bool lumped = false;
};

/// Element-wise stiffness, consistent mass and load with (p+1)^2 Gauss
/// points. Boundary functions are eliminated; with `lift` their coefficients
/// are taken from the exact solution through the control point coordinates
/// (exact for data linear in x and y), otherwise they are zero.
GalerkinSystem assemble_poisson(const GSplineSurface& s, const ManufacturedSolution& m, bool lift = false,
                                ExecPolicy policy = ExecPolicy::Parallel);

enum class MassKind { Consistent, Lumped };

/// Stiffness and (consistent or row-sum lumped) mass with homogeneous
/// Dirichlet conditions. Throws LumpingError on a nonpositive lumped entry.
GalerkinSystem assemble_membrane_eigen(const GSplineSurface& s, MassKind kind,
                                       ExecPolicy policy = ExecPolicy::Parallel);

/// Global coefficient vector (one entry per basis function).
Eigen::VectorXd solve_poisson(const GalerkinSystem& sys);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
  double h1 = 0.0;
};

/// Relative errors. Integrals use `quad_points` Gauss points per direction;
/// the maximum norm uses a 10 x 10 grid per element.
ErrorNorms compute_errors(const GSplineSurface& s, const Eigen::VectorXd& coeffs,
                          const ManufacturedSolution& m, int quad_points = 8);

/// Mean length of the face diagonals of the Bezier mesh.
double mean_element_size(const GSplineSurface& s);

struct ConvergenceLevel {
  int level = 0;
  std::size_t elements = 0;
  std::size_t dofs = 0;
  double h = 0.0;
  ErrorNorms error;
};

struct ConvergenceReport {
  Variant variant = Variant::C0;
  std::vector<ConvergenceLevel> levels;
  /// log2(e_k / e_{k+1}) for L2, Linf, H1 between consecutive levels.
  std::vector<std::array<double, 3>> orders;
};

/// Solves the sine problem on net0 refined 0, 1, ..., levels-1 times, each
/// level rebuilt from scratch. Throws ResourceError above 6 levels.
ConvergenceReport convergence_study(const ControlNet& net0, Variant variant, int levels,
                                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace gspline
