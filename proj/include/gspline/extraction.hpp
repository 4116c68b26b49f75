#pragma once

#include <vector>

#include <Eigen/Core>

#include "gspline/bernstein.hpp"
#include "gspline/mesh.hpp"

namespace gspline {

/// Spline extraction operator of one element.
///
/// Row a of `coeffs` holds the Bernstein coefficients of basis function
/// `basis[a]` on this element, column k = (p+1) j + i. When `rational` is set
/// the element's functions are divided by their sum.
struct ElementExtraction {
  int element = -1;
  int degree = 3;
  bool rational = false;
  std::vector<int> basis;
  Eigen::MatrixXd coeffs;

  int num_bernstein() const { return (degree + 1) * (degree + 1); }
  /// Row of a global basis function, or -1 when it has no support here.
  int row_of(int basis_id) const;
};

/// N^e = C^e b(xi, eta) together with first and second derivatives.
BasisEval evaluate_basis(const ElementExtraction& ext, double xi, double eta);

/// Quotient-rule rationalization R_a = N_a / sum_b N_b.
/// Throws DegenerateBasisError when the denominator is not positive.
BasisEval rationalize(const BasisEval& poly, int element = -1);

/// Basis of the element as used by the geometric map: rational where the
/// extraction is flagged rational, polynomial otherwise.
BasisEval evaluate_element_basis(const ElementExtraction& ext, double xi, double eta);

/// Bezier control points B^e = (C^e)^T P^e, one row per Bernstein index.
Eigen::MatrixX3d bezier_points(const ElementExtraction& ext, const std::vector<Vec3>& positions);

/// Frame anchored at face corner k: origin at that corner, first axis toward
/// corner k+1, second axis toward corner k-1. Corner 0 gives the canonical
/// (xi, eta) frame of the element.
Eigen::Vector2d corner_frame_point(int k, double s, double t);
/// Canonical Bernstein index of local index (i, j) in the frame of corner k.
int corner_frame_index(int p, int k, int i, int j);
/// Re-expresses canonical derivatives in the frame of corner k.
BasisEval to_corner_frame(const BasisEval& canonical, int k);

/// Column sums of C^e (the Bezier weights of the denominator sum_a N_a).
Eigen::VectorXd column_sums(const ElementExtraction& ext);

}  // namespace gspline
