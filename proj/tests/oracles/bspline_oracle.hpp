#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Cox-de Boor recursion for the cubic B-spline on integer knots
// i-2, ..., i+2 (centred at i), with first and second derivatives.
struct Val3 {
  double v = 0, d1 = 0, d2 = 0;
};

inline double cox_de_boor(int i0, int p, double x) {
  // B-spline on knots i0, i0+1, ..., i0+p+1.
  if (p == 0) return (x >= i0 && x < i0 + 1) ? 1.0 : 0.0;
  const double a = (x - i0) / p * cox_de_boor(i0, p - 1, x);
  const double b = (i0 + p + 1 - x) / p * cox_de_boor(i0 + 1, p - 1, x);
  return a + b;
}

inline Val3 cubic_centred(int i, double x) {
  const int i0 = i - 2;
  Val3 r;
  r.v = cox_de_boor(i0, 3, x);
  // d/dx B_{i0,3} = B_{i0,2} - B_{i0+1,2}; second derivative likewise.
  r.d1 = cox_de_boor(i0, 2, x) - cox_de_boor(i0 + 1, 2, x);
  r.d2 = (cox_de_boor(i0, 1, x) - cox_de_boor(i0 + 1, 1, x)) -
         (cox_de_boor(i0 + 1, 1, x) - cox_de_boor(i0 + 2, 1, x));
  return r;
}

// Uniform cubic basis on [0, n] with one control point per integer node
// 0..n and phantom points P_{-1} = 2 P_0 - P_1, P_{n+1} = 2 P_n - P_{n-1}.
// x is in knot units; the half-open support convention is fixed at x = n.
inline std::vector<Val3> phantom_basis(int n, double x) {
  const double xe = std::min(x, n - 1e-14);
  std::vector<Val3> out(n + 1);
  auto add = [](Val3& a, const Val3& b, double w) {
    a.v += w * b.v;
    a.d1 += w * b.d1;
    a.d2 += w * b.d2;
  };
  for (int i = 0; i <= n; ++i) add(out[i], cubic_centred(i, xe), 1.0);
  const Val3 left = cubic_centred(-1, xe), right = cubic_centred(n + 1, xe);
  add(out[0], left, 2.0);
  add(out[1], left, -1.0);
  add(out[n], right, 2.0);
  add(out[n - 1], right, -1.0);
  return out;
}

// Tensor basis of the nx x ny grid, vertex id j*(nx+1)+i, evaluated at
// parameter (u, v) in [0,1]^2. Derivatives are with respect to u and v.
struct TensorEval {
  Eigen::VectorXd N, Nu, Nv, Nuu, Nuv, Nvv;
};

inline TensorEval tensor_basis(int nx, int ny, double u, double v) {
  const auto bx = phantom_basis(nx, u * nx);
  const auto by = phantom_basis(ny, v * ny);
  const int n = (nx + 1) * (ny + 1);
  TensorEval t;
  t.N.setZero(n);
  t.Nu.setZero(n);
  t.Nv.setZero(n);
  t.Nuu.setZero(n);
  t.Nuv.setZero(n);
  t.Nvv.setZero(n);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const int a = j * (nx + 1) + i;
      t.N[a] = bx[i].v * by[j].v;
      t.Nu[a] = nx * bx[i].d1 * by[j].v;
      t.Nv[a] = ny * bx[i].v * by[j].d1;
      t.Nuu[a] = nx * nx * bx[i].d2 * by[j].v;
      t.Nuv[a] = nx * ny * bx[i].d1 * by[j].d1;
      t.Nvv[a] = ny * ny * bx[i].v * by[j].d2;
    }
  return t;
}

// Closed-form Gauss-Legendre nodes and weights on [0, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss4() {
  const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double wa = (18.0 + std::sqrt(30.0)) / 36.0, wb = (18.0 - std::sqrt(30.0)) / 36.0;
  std::vector<double> x{-b, -a, a, b}, w{wb, wa, wa, wb};
  for (auto& t : x) t = 0.5 * (t + 1.0);
  for (auto& t : w) t *= 0.5;
  return {x, w};
}

// Tensor-product cubic IGA for -Lap u = f on the unit square with an n x n
// uniform grid, homogeneous Dirichlet data imposed by dropping the boundary
// control points. Returns one coefficient per grid vertex.
inline Eigen::VectorXd poisson_iga(int n, const std::function<double(double, double)>& f) {
  const int nb = (n + 1) * (n + 1);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(nb);
  const auto [gx, gw] = gauss4();
  const double h = 1.0 / n;
  for (int ey = 0; ey < n; ++ey)
    for (int ex = 0; ex < n; ++ex)
      for (int q = 0; q < 4; ++q)
        for (int r = 0; r < 4; ++r) {
          const double u = (ex + gx[q]) * h, v = (ey + gx[r]) * h;
          const TensorEval t = tensor_basis(n, n, u, v);
          const double w = gw[q] * gw[r] * h * h;
          K.noalias() += w * (t.Nu * t.Nu.transpose() + t.Nv * t.Nv.transpose());
          F.noalias() += w * f(u, v) * t.N;
        }
  std::vector<int> act;
  for (int j = 1; j < n; ++j)
    for (int i = 1; i < n; ++i) act.push_back(j * (n + 1) + i);
  Eigen::MatrixXd Ka(act.size(), act.size());
  Eigen::VectorXd Fa(act.size());
  for (std::size_t a = 0; a < act.size(); ++a) {
    Fa[a] = F[act[a]];
    for (std::size_t b = 0; b < act.size(); ++b) Ka(a, b) = K(act[a], act[b]);
  }
  const Eigen::VectorXd xa = Ka.ldlt().solve(Fa);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nb);
  for (std::size_t a = 0; a < act.size(); ++a) x[act[a]] = xa[a];
  return x;
}

// One step of uniform cubic B-spline curve subdivision of a closed
// polygon, applied along both grid directions of a periodic patch.
inline Eigen::MatrixXd subdivide_curve_closed(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  Eigen::MatrixXd Q(2 * n, P.cols());
  for (int i = 0; i < n; ++i) {
    const auto& a = P.row((i + n - 1) % n);
    const auto& b = P.row(i);
    const auto& c = P.row((i + 1) % n);
    Q.row(2 * i) = (a + 6.0 * b + c) / 8.0;
    Q.row(2 * i + 1) = (b + c) / 2.0;
  }
  return Q;
}

// Brute force min ||F x - f|| s.t. G x = g through the KKT system.
inline Eigen::VectorXd kkt_solve(const Eigen::MatrixXd& G, const Eigen::VectorXd& g, const Eigen::MatrixXd& F,
                                 const Eigen::VectorXd& f) {
  const Eigen::Index n = F.cols(), m = G.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, n + m);
  A.topLeftCorner(n, n) = F.transpose() * F;
  A.topRightCorner(n, m) = G.transpose();
  A.bottomLeftCorner(m, n) = G;
  Eigen::VectorXd b(n + m);
  b << F.transpose() * f, g;
  return Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(b).head(n);
}

// Bezier extraction of one interior uniform cubic span in 1D: row i of the
// 4 x 4 matrix gives the Bernstein coefficients of B-spline i on the span.
inline Eigen::Matrix4d uniform_cubic_extraction() {
  Eigen::Matrix4d C;
  C << 1, 4, 1, 0,  //
      0, 4, 2, 0,   //
      0, 2, 4, 0,   //
      0, 1, 4, 1;
  return C.transpose() / 6.0;
}

}  // namespace oracle
