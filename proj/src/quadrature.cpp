#include "gspline/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gspline/errors.hpp"

namespace gspline {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1 || n > 64) throw DomainError("Gauss-Legendre point count out of range");
  QuadratureRule r;
  r.kind = QuadratureKind::GaussLegendre;
  r.points.resize(n);
  r.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    // Ascending order on [a, b].
    r.points[n - 1 - i] = mid + half * x;
    r.weights[n - 1 - i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

QuadratureRule gauss_lobatto(int n, double a, double b) {
  if (n < 2 || n > 64) throw DomainError("Gauss-Lobatto point count out of range");
  QuadratureRule r;
  r.kind = QuadratureKind::GaussLobatto;
  r.points.resize(n);
  r.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const int m = n - 1;
  // Interior nodes are the roots of P_m'; Newton on P_m' using
  // (1 - x^2) P_m'' = 2x P_m' - m(m+1) P_m.
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * i / m);
    if (i > 0 && i < m) {
      for (int it = 0; it < 100; ++it) {
        double p = 0.0, dp = 0.0;
        legendre(m, x, p, dp);
        const double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
        const double dx = dp / d2p;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
    }
    double p = 0.0, dp = 0.0;
    if (i == 0 || i == m)
      p = (i == 0 && m % 2 == 1) ? -1.0 : 1.0;
    else
      legendre(m, x, p, dp);
    r.points[i] = mid + half * x;
    r.weights[i] = half * 2.0 / (m * (m + 1.0) * p * p);
  }
  return r;
}

}  // namespace gspline
