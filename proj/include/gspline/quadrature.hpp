#pragma once

#include <vector>

namespace gspline {

enum class QuadratureKind { GaussLegendre, GaussLobatto };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::GaussLegendre;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// n-point Gauss-Legendre rule on [a, b] (default [0, 1]).
QuadratureRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

/// n-point Gauss-Lobatto rule on [a, b], endpoints included (n >= 2).
QuadratureRule gauss_lobatto(int n, double a, double b);

}  // namespace gspline
