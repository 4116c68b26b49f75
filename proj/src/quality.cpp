#include "gspline/quality.hpp"

#include <algorithm>
#include <cmath>

#include "gspline/errors.hpp"
#include "gspline/quadrature.hpp"

namespace gspline {

double shell_metric_det(const SurfaceFrame& f, double zeta) {
  const Eigen::Matrix2d g = f.a - 2.0 * zeta * f.b;
  return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
}

ShellSampler::ShellSampler(const GSplineSurface& s, ExecPolicy policy)
    : n_elements_(s.num_elements()), policy_(policy) {
  std::vector<std::size_t> offset(s.num_elements() + 1, 0);
  for (std::size_t e = 0; e < s.num_elements(); ++e) {
    const std::size_t n = s.elements[e].degree + 1;
    offset[e + 1] = offset[e] + n * n;
  }
  frames_.resize(offset.back());
  const int ne = static_cast<int>(s.num_elements());
  auto fill = [&](int e) {
    const QuadratureRule q = gauss_legendre(s.elements[e].degree + 1);
    std::size_t k = offset[e];
    for (double eta : q.points)
      for (double xi : q.points) frames_[k++] = {e, xi, eta, frame(s, e, xi, eta)};
  };
  if (policy == ExecPolicy::Parallel) {
    std::vector<std::exception_ptr> errs(ne);
#pragma omp parallel for schedule(dynamic)
    for (int e = 0; e < ne; ++e) {
      try {
        fill(e);
      } catch (...) {
        errs[e] = std::current_exception();
      }
    }
    for (auto& x : errs)
      if (x) std::rethrow_exception(x);
  } else {
    for (int e = 0; e < ne; ++e) fill(e);
  }
}

namespace {
std::vector<double> lobatto_offsets(double t) { return gauss_lobatto(5, -0.5 * t, 0.5 * t).points; }
}  // namespace

ValidityResult ShellSampler::check(double t) const {
  const std::vector<double> zs = lobatto_offsets(t);
  const int n = static_cast<int>(frames_.size());
  std::vector<char> bad(n, 0);
  auto test = [&](int i) {
    for (double z : zs)
      if (!(shell_metric_det(frames_[i].frame, z) > 0.0)) {
        bad[i] = 1;
        return;
      }
  };
  if (policy_ == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) test(i);
  } else {
    for (int i = 0; i < n; ++i) test(i);
  }
  ValidityResult r;
  for (int i = 0; i < n; ++i) {
    if (!bad[i]) continue;
    r.valid = false;
    const Sample& s = frames_[i];
    for (double z : zs) {
      const double d = shell_metric_det(s.frame, z);
      if (!(d > 0.0)) {
        r.first_failure = {s.element, s.xi, s.eta, z, d};
        break;
      }
    }
    break;
  }
  return r;
}

std::vector<double> ShellSampler::element_minimum(double t) const {
  const std::vector<double> zs = lobatto_offsets(t);
  std::vector<double> m(n_elements_, std::numeric_limits<double>::infinity());
  for (const Sample& s : frames_)
    for (double z : zs) m[s.element] = std::min(m[s.element], shell_metric_det(s.frame, z));
  return m;
}

ValidityResult is_valid_at_thickness(const GSplineSurface& s, double t, ExecPolicy policy) {
  if (!(t > 0.0)) throw DomainError("thickness must be positive");
  return ShellSampler(s, policy).check(t);
}

QualityReport min_invalid_thickness(const GSplineSurface& s, double t_lo, double t_hi, double tol,
                                    ExecPolicy policy) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || !(tol > 0.0))
    throw DomainError("thickness bracket must satisfy 0 < t_lo < t_hi and tol > 0");
  const ShellSampler sampler(s, policy);
  QualityReport rep;
  rep.variant = s.variant;
  rep.t_lo = t_lo;
  rep.t_hi = t_hi;
  rep.tol = tol;

  const ValidityResult at_lo = sampler.check(t_lo);
  if (!at_lo.valid) throw DomainError("surface is already invalid at the lower thickness bound");
  ValidityResult at_hi = sampler.check(t_hi);
  if (at_hi.valid) {
    rep.element_min_det = sampler.element_minimum(t_hi);
    return rep;
  }

  double lo = t_lo, hi = t_hi;
  ValidityResult fail = at_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const ValidityResult r = sampler.check(mid);
    if (r.valid) {
      lo = mid;
    } else {
      hi = mid;
      fail = r;
    }
    ++rep.bisection_steps;
  }
  rep.t_star = hi;
  rep.first_invalid = fail.first_failure;

  // det g at a point is quadratic in zeta and may open upward, so confirm
  // validity on a dense set of thicknesses below the reported value.
  const double scan_lo = std::max(t_lo, hi - 0.1);
  const int n_scan = 41;
  for (int i = 0; i < n_scan; ++i) {
    const double t = scan_lo + (lo - scan_lo) * i / (n_scan - 1);
    if (!sampler.check(t).valid) {
      rep.monotone_verified = false;
      break;
    }
  }
  rep.element_min_det = sampler.element_minimum(hi);
  return rep;
}

}  // namespace gspline
