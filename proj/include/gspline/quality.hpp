#pragma once

#include <limits>
#include <vector>

#include "gspline/parallel.hpp"
#include "gspline/surface.hpp"

namespace gspline {

/// det g with g_ab = a_ab - 2 zeta b_ab.
double shell_metric_det(const SurfaceFrame& frame, double zeta);

/// Location of a shell metric evaluation.
struct ShellPoint {
  int element = -1;
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  double det = 0.0;
};

struct ValidityResult {
  bool valid = true;
  ShellPoint first_failure;  // meaningful when !valid
};

/// Frames at the (p+1) x (p+1) Gauss-Legendre points of every element.
class ShellSampler {
public:
  explicit ShellSampler(const GSplineSurface& s, ExecPolicy policy = ExecPolicy::Parallel);

  /// det g at the 5 Gauss-Lobatto points of [-t/2, t/2] through every
  /// surface point; valid iff all are positive.
  ValidityResult check(double t) const;
  /// Smallest det g per element at thickness t.
  std::vector<double> element_minimum(double t) const;

  std::size_t size() const { return frames_.size(); }

private:
  struct Sample {
    int element;
    double xi;
    double eta;
    SurfaceFrame frame;
  };
  std::vector<Sample> frames_;
  std::size_t n_elements_ = 0;
  ExecPolicy policy_;
};

ValidityResult is_valid_at_thickness(const GSplineSurface& s, double t,
                                     ExecPolicy policy = ExecPolicy::Parallel);

struct QualityReport {
  Variant variant = Variant::C0;
  double t_lo = 0.01;
  double t_hi = 100.0;
  double tol = 0.005;
  /// +infinity when the surface stays valid at t_hi.
  double t_star = std::numeric_limits<double>::infinity();
  ShellPoint first_invalid;
  /// Every thickness sampled in [t_star - 0.1, t_star) was valid.
  bool monotone_verified = true;
  int bisection_steps = 0;
  /// Smallest det g per element at min(t_star, t_hi).
  std::vector<double> element_min_det;
};

/// Bisection for the smallest invalid thickness. Throws DomainError when the
/// surface is already invalid at t_lo.
QualityReport min_invalid_thickness(const GSplineSurface& s, double t_lo = 0.01, double t_hi = 100.0,
                                    double tol = 0.005, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace gspline
