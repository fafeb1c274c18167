#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gapfield/contrast.hpp"
#include "gapfield/error.hpp"
#include "gapfield/geometry.hpp"
#include "support.hpp"

using namespace gapfield;
using testing::uniform;

namespace {
const double pi = std::numbers::pi;

BipolarFrame field_ref(double eps) { return BipolarFrame::core_shell({1, 2, eps, 1, 0.01}); }
}  // namespace

TEST_CASE("core-shell frame constants") {
  const BipolarFrame f = field_ref(0.001);
  CHECK(f.r_star() == doctest::Approx(2).epsilon(1e-15));
  CHECK(f.alpha() == doctest::Approx(0.063302).epsilon(1e-5));
  CHECK(f.xi_i() > f.xi_e());
  CHECK(f.xi_e() > 0);

  // p_2 is a fixed point of the combined reflection
  const Point p2 = f.pole_right();
  const Point q = reflect_point(f.circles()[0].circle, reflect_point(f.circles()[1].circle, p2));
  CHECK(std::abs(q.x - p2.x) < 1e-12);
  CHECK(std::abs(q.y) < 1e-12);

  const BipolarFrame g = field_ref(0.1);
  const Circle ci = g.circles()[0].circle, ce = g.circles()[1].circle;
  CHECK(ci.center.x == doctest::Approx(1.216667).epsilon(1e-6));
  CHECK(ce.center.x == doctest::Approx(2.116667).epsilon(1e-6));
  // gap and containment from the returned circles
  const double d = ce.radius - ci.radius - std::abs(ce.center.x - ci.center.x);
  CHECK(d == doctest::Approx(0.1).epsilon(1e-12));
  const auto [xi, xe] = g.closest_points();
  CHECK(xi.x - xe.x == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("frame rejects touching circles and k_e = 1") {
  CHECK_THROWS_AS(BipolarFrame::core_shell({1, 2, 1.0, 1, 0.01}), ConfigError);
  CHECK_THROWS_AS(BipolarFrame::core_shell({1, 2, 0.1, 1, 1.0}), ConfigError);
  CHECK_THROWS_AS(BipolarFrame::two_disks({1, 2, 0.1, 1.0, 3}), ConfigError);
}

TEST_CASE("two-disk frame") {
  const BipolarFrame f = BipolarFrame::two_disks({1.5, 2, 0.005, 10, 15});
  CHECK(f.r_star() == doctest::Approx(std::sqrt(12.0 / 7)).epsilon(1e-15));
  const Circle c1 = f.circles()[0].circle, c2 = f.circles()[1].circle;
  CHECK(c1.center.x < 0);
  CHECK(f.circles()[0].xi < 0);
  CHECK((c2.center.x - c2.radius) - (c1.center.x + c1.radius) == doctest::Approx(0.005).epsilon(1e-12));
  const Point p2 = f.pole_right();
  const Point q = reflect_point(c1, reflect_point(c2, p2));
  CHECK(std::abs(q.x - p2.x) < 1e-12);

  const BipolarFrame s = BipolarFrame::two_disks({1.3, 1.3, 0.01, 5, 5});
  CHECK(s.circles()[0].circle.center.x == doctest::Approx(-s.circles()[1].circle.center.x).epsilon(1e-15));
  CHECK(s.xi_1() == doctest::Approx(s.xi_2()).epsilon(1e-15));
}

TEST_CASE("bipolar transforms") {
  const BipolarFrame f = field_ref(0.01);
  const double a = f.alpha();
  auto b = f.to_bipolar({0, 0});
  CHECK(b.xi == 0);
  CHECK(b.theta == 0);
  b = f.to_bipolar({0, a});
  CHECK(std::abs(b.xi) < 1e-15);
  CHECK(b.theta == doctest::Approx(pi / 2).epsilon(1e-15));
  Point p = f.to_cartesian({0, pi / 2});
  CHECK(std::abs(p.x) < 1e-16);
  CHECK(p.y == doctest::Approx(a).epsilon(1e-15));
  p = f.to_cartesian({0.7, pi});
  CHECK(p.x == doctest::Approx(a * (std::exp(0.7) + 1) / (std::exp(0.7) - 1)).epsilon(1e-14));
  CHECK(f.circle_of_level(0.35).center.x == doctest::Approx(p.x).epsilon(1e-14));

  CHECK_THROWS_AS(f.to_bipolar(f.pole_left()), DomainError);
  CHECK_THROWS_AS(f.to_cartesian({0, pi}), DomainError);
  CHECK_THROWS_AS(f.circle_of_level(0), DomainError);
}

TEST_CASE("round trip and the |z| vs alpha dichotomy") {
  const BipolarFrame f = field_ref(0.01);
  const double a = f.alpha();
  for (int k = 0; k < 10000; ++k) {
    const BipolarPoint b{uniform(-10, 10), uniform(-pi, pi)};
    const Point p = f.to_cartesian(b);
    const BipolarPoint c = f.to_bipolar(p);
    REQUIRE(std::abs(c.xi - b.xi) <= 1e-10 * std::max(1.0, std::abs(b.xi)));
    REQUIRE(std::abs(c.theta - b.theta) <= 1e-10);
    const double r = std::hypot(p.x, p.y);
    if (std::abs(std::abs(b.theta) - pi / 2) > 1e-9) REQUIRE((std::abs(b.theta) <= pi / 2) == (r <= a));
  }
  for (int k = 0; k < 200; ++k) {
    const Point p{uniform(-3, 3), uniform(-3, 3)};
    const Point q = f.to_cartesian(f.to_bipolar(p));
    REQUIRE(std::hypot(q.x - p.x, q.y - p.y) <= 1e-12 * std::max(a, std::hypot(p.x, p.y)));
  }
}

TEST_CASE("scale factor and basis against finite differences") {
  const BipolarFrame f = field_ref(0.01);
  const double a = f.alpha();
  CHECK(f.scale_factor({0, pi / 2}) == doctest::Approx(1 / a).epsilon(1e-14));
  CHECK(f.scale_factor({0, 0}) == doctest::Approx(2 / a).epsilon(1e-14));
  auto [e0, t0] = f.basis({0.3, 0});
  CHECK(e0.x == doctest::Approx(1).epsilon(1e-15));
  CHECK(std::abs(e0.y) < 1e-15);
  for (int k = 0; k < 300; ++k) {
    const BipolarPoint b{uniform(-3, 3), uniform(-3, 3)};
    const double h = 1e-6;
    const Point p1 = f.to_cartesian({b.xi + h, b.theta}), p0 = f.to_cartesian({b.xi - h, b.theta});
    const double dx = (p1.x - p0.x) / (2 * h), dy = (p1.y - p0.y) / (2 * h);
    const double n = std::hypot(dx, dy);
    const double sf = f.scale_factor(b);
    REQUIRE(std::abs(1 / n - sf) <= 1e-6 * sf);
    REQUIRE(std::abs(dx) <= 1 / sf * (1 + 1e-8));
    REQUIRE(std::abs(dy) <= 1 / sf * (1 + 1e-8));
    auto [e, t] = f.basis(b);
    REQUIRE(std::abs(e.x - dx / n) < 1e-6);
    REQUIRE(std::abs(e.y - dy / n) < 1e-6);
    REQUIRE(std::abs(dot(e, t)) < 1e-14);
    REQUIRE(std::abs(std::hypot(t.x, t.y) - 1) < 1e-14);
  }
}

TEST_CASE("level circles") {
  const BipolarFrame f = field_ref(0.001);
  for (const auto& lc : f.circles()) {
    const Circle c = f.circle_of_level(lc.xi);
    CHECK(c.center.x == doctest::Approx(lc.circle.center.x).epsilon(1e-12));
    CHECK(c.radius == doctest::Approx(lc.circle.radius).epsilon(1e-12));
  }
  const Circle far = f.circle_of_level(30);
  CHECK(far.center.x == doctest::Approx(f.alpha()).epsilon(1e-12));
  CHECK(far.radius < 1e-12);
  const Circle pos = f.circle_of_level(0.4), neg = f.circle_of_level(-0.4);
  CHECK(neg.center.x == doctest::Approx(-pos.center.x).epsilon(1e-15));
  CHECK(neg.radius == doctest::Approx(pos.radius).epsilon(1e-15));
  const Point c = f.to_cartesian({0.8, pi});
  CHECK(c.x == doctest::Approx(pos.center.x).epsilon(1e-13));
}

TEST_CASE("reflections") {
  const BipolarFrame f = field_ref(0.01);
  const Circle c = f.circles()[1].circle;
  CHECK_THROWS_AS(reflect_point(c, c.center), DomainError);
  for (int k = 0; k < 500; ++k) {
    const Point p{uniform(-4, 4), uniform(-4, 4)};
    const Point q = reflect_point(c, p);
    REQUIRE(distance(q, c.center) * distance(p, c.center) == doctest::Approx(c.radius * c.radius).epsilon(1e-12));
    const Point pp = reflect_point(c, q);
    REQUIRE(distance(pp, p) < 1e-11);
    const double phi = uniform(-pi, pi);
    const Point on{c.center.x + c.radius * std::cos(phi), c.radius * std::sin(phi)};
    REQUIRE(distance(reflect_point(c, on), on) < 1e-13);
  }
  // reflection across a level circle is xi -> 2 xi0 - xi
  for (const auto& lc : f.circles()) {
    for (int k = 0; k < 500; ++k) {
      const BipolarPoint b{uniform(-2, 2), uniform(-3.1, 3.1)};
      const Point r1 = reflect_point(lc.circle, f.to_cartesian(b));
      const Point r2 = f.to_cartesian({2 * lc.xi - b.xi, b.theta});
      REQUIRE(distance(r1, r2) <= 1e-12 * std::max(f.alpha(), std::hypot(r2.x, r2.y)));
    }
  }
}

TEST_CASE("reflected levels") {
  const BipolarFrame f = field_ref(0.01);
  CHECK(f.reflected_level(0, Interface::inner) == f.xi_i());
  CHECK(f.reflected_level(0, Interface::outer) == f.xi_e());
  for (int k = 1; k < 20; ++k) {
    CHECK(f.reflected_level(k, Interface::inner) > f.reflected_level(k - 1, Interface::inner));
    CHECK(f.reflected_level(k, Interface::outer) >= f.xi_e());
  }
}

TEST_CASE("alpha approaches r_* sqrt(eps)") {
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const BipolarFrame f = field_ref(eps);
    const double ratio = f.alpha() / (f.r_star() * std::sqrt(eps));
    CHECK(std::abs(ratio - 1) <= 5 * eps);
  }
}

TEST_CASE("contrast constants") {
  const CoreShellConfig cfg{1, 2, 0.001, 1, 0.03};
  const BipolarFrame f = BipolarFrame::core_shell(cfg);
  const MaterialContrast c = contrast_from_conductivities(cfg, f);
  CHECK(c.tau_i == doctest::Approx(c.tau_e).epsilon(1e-15));
  CHECK(c.tau_i == doctest::Approx(1 / (2 * c.lambda_i)).epsilon(1e-14));
  CHECK(c.tau_e == doctest::Approx(-1 / (2 * c.lambda_e)).epsilon(1e-14));
  CHECK(c.regime == Regime::blow_up_possible);

  const CoreShellConfig b{1, 2, 0.01, 10, 5};
  const MaterialContrast cb = contrast_from_conductivities(b, BipolarFrame::core_shell(b));
  CHECK(cb.regime == Regime::bounded);
  CHECK(std::isnan(cb.beta));

  const CoreShellConfig same{1, 2, 0.01, 0.3, 0.3};
  CHECK(contrast_from_conductivities(same, BipolarFrame::core_shell(same)).lambda_i_infinite);

  const TwoDiskConfig t{1.5, 2, 0.01, 1 + 1e-15, 1 + 1e-15};
  const TwoDiskContrast ct = two_disk_contrast(t, BipolarFrame::two_disks(t));
  CHECK(ct.tau < 1e-20);
  CHECK(ct.beta > 100);
  CHECK(ct.regime == Regime::bounded);
}

TEST_CASE("blow-up scale") {
  const CoreShellConfig cfg{1, 2, 0.001, 1, 0.01};
  MaterialContrast c = contrast_from_conductivities(cfg, BipolarFrame::core_shell(cfg));
  const double s1 = blow_up_scale(c, 1, 0);
  c.k_e = 0;
  CHECK(blow_up_scale(c, 1, 0) == doctest::Approx(2 / std::sqrt(0.001)).epsilon(1e-14));
  CHECK(blow_up_scale(c, 1, 0) > s1);
}
