#include <cmath>

#include "doctest.h"
#include "gspline/errors.hpp"
#include "gspline/g1.hpp"
#include "gspline/nets.hpp"
#include "gspline/quality.hpp"

using namespace gspline;

TEST_CASE("quality: metric determinant of a cylinder frame") {
  SurfaceFrame f;
  const double R = 1.5;
  f.a = Eigen::Matrix2d::Identity();
  f.b << 1.0 / R, 0.0, 0.0, 0.0;
  CHECK(shell_metric_det(f, 0.0) == doctest::Approx(1.0));
  CHECK(std::abs(shell_metric_det(f, R / 2)) < 1e-15);
  CHECK(shell_metric_det(f, -R / 2) == doctest::Approx(2.0));
  f.a << 2.0, 0.5, 0.5, 1.0;
  f.b << 0.3, 0.1, 0.1, -0.2;
  const double z = 0.7;
  const Eigen::Matrix2d g = f.a - 2 * z * f.b;
  CHECK(shell_metric_det(f, z) == doctest::Approx(g.determinant()).epsilon(1e-14));
}

TEST_CASE("quality: flat plate never fails") {
  const QualityReport r = min_invalid_thickness(build_surface(structured_grid(4, 4), Variant::C0));
  CHECK(std::isinf(r.t_star));
}

TEST_CASE("quality: cylinder fails near its radius") {
  const GSplineSurface s = build_surface(cylinder_net(16, 6, 1.0, 3.0), Variant::C0);
  const QualityReport r = min_invalid_thickness(s);
  CHECK(r.t_star == doctest::Approx(1.0).epsilon(0.02));
  CHECK_FALSE(is_valid_at_thickness(s, r.t_star).valid);
  CHECK(is_valid_at_thickness(s, r.t_star - 2 * r.tol).valid);
  CHECK(r.monotone_verified);
  CHECK(r.element_min_det.size() == s.num_elements());
}

TEST_CASE("quality: thinner than t_lo") {
  const GSplineSurface s = build_surface(cylinder_net(16, 4, 0.004, 0.05), Variant::C0);
  CHECK_THROWS_AS(min_invalid_thickness(s), DomainError);
}

TEST_CASE("quality: thickness scales with the geometry") {
  const ControlNet net = lift_z(fan_net(3, 3, true), 0.3);
  const double k = 3.0;
  const ControlNet big = transform(net, k * Eigen::Matrix3d::Identity(), Vec3::Zero());
  for (Variant v : {Variant::C0, Variant::G1P}) {
    const QualityReport a = min_invalid_thickness(build_surface(net, v));
    const QualityReport b = min_invalid_thickness(build_surface(big, v), k * 0.01, k * 100.0, k * 0.005);
    if (std::isinf(a.t_star)) {
      CHECK(std::isinf(b.t_star));
    } else {
      CHECK(std::abs(b.t_star - k * a.t_star) <= k * 0.005 + 1e-12);
    }
  }
}
