#include "gspline/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "gspline/errors.hpp"
#include "gspline/g1.hpp"
#include "gspline/quadrature.hpp"
#include "gspline/refine.hpp"

namespace gspline {

ManufacturedSolution sine_solution() {
  constexpr double pi = std::numbers::pi;
  return {[](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); },
          [](double x, double y) {
            return Eigen::Vector2d(pi * std::cos(pi * x) * std::sin(pi * y),
                                   pi * std::sin(pi * x) * std::cos(pi * y));
          },
          [](double x, double y) { return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y); }};
}

ManufacturedSolution linear_solution() {
  return {[](double x, double) { return x; }, [](double, double) { return Eigen::Vector2d(1.0, 0.0); },
          [](double, double) { return 0.0; }};
}

ManufacturedSolution zero_solution() {
  return {[](double, double) { return 0.0; }, [](double, double) { return Eigen::Vector2d(0.0, 0.0); },
          [](double, double) { return 0.0; }};
}

PhysicalEval physical_basis(const GSplineSurface& s, int element, double xi, double eta) {
  const ElementExtraction& ext = s.elements[element];
  const BasisEval b = evaluate_element_basis(ext, xi, eta);
  double x = 0, y = 0, x_xi = 0, x_eta = 0, y_xi = 0, y_eta = 0;
  for (std::size_t a = 0; a < ext.basis.size(); ++a) {
    const Vec3& P = s.net.positions[ext.basis[a]];
    x += P.x() * b.value[a];
    y += P.y() * b.value[a];
    x_xi += P.x() * b.d_xi[a];
    x_eta += P.x() * b.d_eta[a];
    y_xi += P.y() * b.d_xi[a];
    y_eta += P.y() * b.d_eta[a];
  }
  const double det = x_xi * y_eta - x_eta * y_xi;
  const double diag = bounding_box_diagonal(s.net);
  if (!(std::abs(det) > 1e-12 * diag * diag)) {
    std::ostringstream msg;
    msg << "singular Jacobian on element " << element << " at (" << xi << ", " << eta << ")";
    throw SingularParameterizationError(msg.str());
  }
  PhysicalEval p;
  p.N = b.value;
  p.dNdx = (y_eta * b.d_xi - y_xi * b.d_eta) / det;
  p.dNdy = (-x_eta * b.d_xi + x_xi * b.d_eta) / det;
  p.x = x;
  p.y = y;
  p.jacobian = std::abs(det);
  return p;
}

std::vector<bool> boundary_functions(const GSplineSurface& s) {
  const CNet& cnet = s.net.cnet;
  std::vector<bool> out(s.num_basis(), false);
  bool any_boundary = false;
  for (int e = 0; e < static_cast<int>(cnet.num_edges()); ++e) {
    if (!cnet.is_boundary_edge(e)) continue;
    any_boundary = true;
    const int h = cnet.edge(e).half[0];
    const ElementExtraction& ext = s.elements[h / 4];
    const int side = h % 4;
    for (std::size_t a = 0; a < ext.basis.size(); ++a)
      for (int i = 0; i <= ext.degree; ++i)
        if (std::abs(ext.coeffs(a, corner_frame_index(ext.degree, side, i, 0))) > 1e-12)
          out[ext.basis[a]] = true;
  }
  if (!any_boundary) throw TopologyError("the control net has no boundary for Dirichlet conditions");
  return out;
}

namespace {

struct ElementMatrices {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  Eigen::VectorXd F;
};

ElementMatrices element_matrices(const GSplineSurface& s, int e, const ManufacturedSolution& m) {
  const ElementExtraction& ext = s.elements[e];
  const Eigen::Index n = static_cast<Eigen::Index>(ext.basis.size());
  ElementMatrices out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  const QuadratureRule q = gauss_legendre(ext.degree + 1);
  for (std::size_t j = 0; j < q.size(); ++j)
    for (std::size_t i = 0; i < q.size(); ++i) {
      const PhysicalEval p = physical_basis(s, e, q.points[i], q.points[j]);
      const double w = q.weights[i] * q.weights[j] * p.jacobian;
      out.K.noalias() += w * (p.dNdx * p.dNdx.transpose() + p.dNdy * p.dNdy.transpose());
      out.M.noalias() += w * (p.N * p.N.transpose());
      out.F.noalias() += w * m.source(p.x, p.y) * p.N;
    }
  return out;
}

void assemble_full(const GSplineSurface& s, const ManufacturedSolution& m, ExecPolicy policy,
                   GalerkinSystem& sys) {
  const int ne = static_cast<int>(s.num_elements());
  const Eigen::Index nb = static_cast<Eigen::Index>(s.num_basis());
  std::vector<ElementMatrices> local(ne);
  if (policy == ExecPolicy::Parallel) {
    std::vector<std::exception_ptr> errs(ne);
#pragma omp parallel for schedule(dynamic)
    for (int e = 0; e < ne; ++e) {
      try {
        local[e] = element_matrices(s, e, m);
      } catch (...) {
        errs[e] = std::current_exception();
      }
    }
    for (auto& x : errs)
      if (x) std::rethrow_exception(x);
  } else {
    for (int e = 0; e < ne; ++e) local[e] = element_matrices(s, e, m);
  }

  // Merge in element order so the sums are independent of the thread count.
  std::vector<Eigen::Triplet<double>> tk, tm;
  sys.load_full = Eigen::VectorXd::Zero(nb);
  for (int e = 0; e < ne; ++e) {
    const auto& ids = s.elements[e].basis;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      sys.load_full[ids[a]] += local[e].F[a];
      for (std::size_t b = 0; b < ids.size(); ++b) {
        tk.emplace_back(ids[a], ids[b], local[e].K(a, b));
        tm.emplace_back(ids[a], ids[b], local[e].M(a, b));
      }
    }
  }
  sys.K_full.resize(nb, nb);
  sys.M_full.resize(nb, nb);
  sys.K_full.setFromTriplets(tk.begin(), tk.end());
  sys.M_full.setFromTriplets(tm.begin(), tm.end());
}

Eigen::SparseMatrix<double> restrict(const Eigen::SparseMatrix<double>& A, const std::vector<int>& rows,
                                     const std::vector<int>& cols) {
  std::vector<int> cmap(A.cols(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) cmap[cols[j]] = static_cast<int>(j);
  std::vector<int> rmap(A.rows(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) rmap[rows[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      if (rmap[it.row()] >= 0 && cmap[it.col()] >= 0) t.emplace_back(rmap[it.row()], cmap[it.col()], it.value());
  Eigen::SparseMatrix<double> R(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

void eliminate(const GSplineSurface& s, const ManufacturedSolution& m, bool lift, GalerkinSystem& sys) {
  const std::vector<bool> bnd = boundary_functions(s);
  const int nb = static_cast<int>(s.num_basis());
  sys.active.assign(nb, -1);
  sys.dofs.clear();
  std::vector<int> fixed_ids;
  sys.fixed = Eigen::VectorXd::Zero(nb);
  for (int a = 0; a < nb; ++a) {
    if (bnd[a]) {
      fixed_ids.push_back(a);
      if (lift) sys.fixed[a] = m.u(s.net.positions[a].x(), s.net.positions[a].y());
    } else {
      sys.active[a] = static_cast<int>(sys.dofs.size());
      sys.dofs.push_back(a);
    }
  }
  sys.K = restrict(sys.K_full, sys.dofs, sys.dofs);
  sys.M = restrict(sys.M_full, sys.dofs, sys.dofs);
  Eigen::VectorXd g(fixed_ids.size());
  for (std::size_t i = 0; i < fixed_ids.size(); ++i) g[i] = sys.fixed[fixed_ids[i]];
  sys.rhs.resize(static_cast<Eigen::Index>(sys.dofs.size()));
  for (std::size_t i = 0; i < sys.dofs.size(); ++i) sys.rhs[i] = sys.load_full[sys.dofs[i]];
  if (!fixed_ids.empty()) sys.rhs -= restrict(sys.K_full, sys.dofs, fixed_ids) * g;
}

}  // namespace

GalerkinSystem assemble_poisson(const GSplineSurface& s, const ManufacturedSolution& m, bool lift,
                                ExecPolicy policy) {
  GalerkinSystem sys;
  assemble_full(s, m, policy, sys);
  eliminate(s, m, lift, sys);
  return sys;
}

GalerkinSystem assemble_membrane_eigen(const GSplineSurface& s, MassKind kind, ExecPolicy policy) {
  GalerkinSystem sys = assemble_poisson(s, zero_solution(), false, policy);
  if (kind == MassKind::Lumped) {
    // Row sums of the full consistent mass, i.e. the integral of each function.
    const Eigen::VectorXd rows = sys.M_full * Eigen::VectorXd::Ones(sys.M_full.cols());
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < sys.dofs.size(); ++i) {
      const double v = rows[sys.dofs[i]];
      if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "lumped mass of basis function " << sys.dofs[i] << " is " << v;
        throw LumpingError(msg.str());
      }
      t.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
    }
    sys.M.setZero();
    sys.M.resize(static_cast<Eigen::Index>(sys.dofs.size()), static_cast<Eigen::Index>(sys.dofs.size()));
    sys.M.setFromTriplets(t.begin(), t.end());
    sys.lumped = true;
  }
  return sys;
}

Eigen::VectorXd solve_poisson(const GalerkinSystem& sys) {
  Eigen::VectorXd c = sys.fixed;
  if (sys.dofs.empty()) return c;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.K);
  if (ldlt.info() != Eigen::Success) throw InternalError("stiffness factorization failed");
  const Eigen::VectorXd x = ldlt.solve(sys.rhs);
  for (std::size_t i = 0; i < sys.dofs.size(); ++i) c[sys.dofs[i]] = x[i];
  return c;
}

ErrorNorms compute_errors(const GSplineSurface& s, const Eigen::VectorXd& coeffs, const ManufacturedSolution& m,
                          int quad_points) {
  const QuadratureRule q = gauss_legendre(quad_points);
  double e2 = 0, u2 = 0, eg = 0, ug = 0, emax = 0, umax = 0;
  for (int e = 0; e < static_cast<int>(s.num_elements()); ++e) {
    const auto& ids = s.elements[e].basis;
    Eigen::VectorXd c(ids.size());
    for (std::size_t a = 0; a < ids.size(); ++a) c[a] = coeffs[ids[a]];
    for (std::size_t j = 0; j < q.size(); ++j)
      for (std::size_t i = 0; i < q.size(); ++i) {
        const PhysicalEval p = physical_basis(s, e, q.points[i], q.points[j]);
        const double w = q.weights[i] * q.weights[j] * p.jacobian;
        const double u = m.u(p.x, p.y);
        const Eigen::Vector2d gu = m.grad(p.x, p.y);
        const double uh = c.dot(p.N);
        const Eigen::Vector2d guh(c.dot(p.dNdx), c.dot(p.dNdy));
        e2 += w * (uh - u) * (uh - u);
        u2 += w * u * u;
        eg += w * (guh - gu).squaredNorm();
        ug += w * gu.squaredNorm();
      }
    for (int j = 0; j < 10; ++j)
      for (int i = 0; i < 10; ++i) {
        const PhysicalEval p = physical_basis(s, e, i / 9.0, j / 9.0);
        const double u = m.u(p.x, p.y);
        emax = std::max(emax, std::abs(c.dot(p.N) - u));
        umax = std::max(umax, std::abs(u));
      }
  }
  ErrorNorms out;
  out.l2 = u2 > 0 ? std::sqrt(e2 / u2) : std::sqrt(e2);
  out.h1 = (u2 + ug) > 0 ? std::sqrt((e2 + eg) / (u2 + ug)) : std::sqrt(e2 + eg);
  out.linf = umax > 0 ? emax / umax : emax;
  return out;
}

double mean_element_size(const GSplineSurface& s) {
  double sum = 0.0;
  for (int e = 0; e < static_cast<int>(s.num_elements()); ++e) {
    const Vec3 x00 = map_point(s, e, 0, 0).x, x10 = map_point(s, e, 1, 0).x;
    const Vec3 x11 = map_point(s, e, 1, 1).x, x01 = map_point(s, e, 0, 1).x;
    sum += 0.5 * ((x11 - x00).norm() + (x01 - x10).norm());
  }
  return s.num_elements() ? sum / static_cast<double>(s.num_elements()) : 0.0;
}

ConvergenceReport convergence_study(const ControlNet& net0, Variant variant, int levels, ExecPolicy policy) {
  if (levels < 1) throw DomainError("convergence study needs at least one level");
  if (levels > 6) throw ResourceError("more than 6 convergence levels requested");
  ConvergenceReport rep;
  rep.variant = variant;
  const ManufacturedSolution m = sine_solution();
  ControlNet net = net0;
  for (int l = 0; l < levels; ++l) {
    if (l > 0) net = refine(net, policy);
    const GSplineSurface s = build_surface(net, variant, policy);
    const GalerkinSystem sys = assemble_poisson(s, m, false, policy);
    const Eigen::VectorXd c = solve_poisson(sys);
    ConvergenceLevel lev;
    lev.level = l;
    lev.elements = s.num_elements();
    lev.dofs = sys.dofs.size();
    lev.h = mean_element_size(s);
    lev.error = compute_errors(s, c, m);
    rep.levels.push_back(lev);
  }
  for (std::size_t l = 0; l + 1 < rep.levels.size(); ++l) {
    const ErrorNorms& a = rep.levels[l].error;
    const ErrorNorms& b = rep.levels[l + 1].error;
    rep.orders.push_back({std::log2(a.l2 / b.l2), std::log2(a.linf / b.linf), std::log2(a.h1 / b.h1)});
  }
  return rep;
}

}  // namespace gspline
