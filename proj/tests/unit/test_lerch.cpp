#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

#include "gapfield/error.hpp"
#include "gapfield/lerch.hpp"
#include "support.hpp"

using namespace gapfield;
using testing::uniform;

namespace {
const double pi = std::numbers::pi;

// L on [0,1] after w = e^{-t}: -int_0^1 z w^beta / (1 + z w) dw
cplx tanh_sinh_L(cplx z, double beta) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  const double re = ts.integrate([&](double w) { return (-z * std::pow(w, beta) / (1.0 + z * w)).real(); }, 0.0, 1.0);
  const double im = ts.integrate([&](double w) { return (-z * std::pow(w, beta) / (1.0 + z * w)).imag(); }, 0.0, 1.0);
  return {re, im};
}

template <class F>
double half_line(F f) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}
}  // namespace

TEST_CASE("L and P vanish at zero") {
  CHECK(eval_L(0, 1.3) == cplx(0));
  CHECK(eval_P(0, 0.2) == cplx(0));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_L(1.0, 1), DomainError);
  CHECK_THROWS_AS(eval_L(cplx(0, -1), 1), DomainError);
  CHECK_THROWS_AS(eval_L(0.5, 0), DomainError);
  CHECK_THROWS_AS(eval_P(0.5, -1), DomainError);
  CHECK_THROWS_AS(eval_P(1.5, 1), DomainError);
  CHECK_THROWS_AS(kernel_series_sum(1, 2, 0, 0.5), DomainError);
  CHECK_THROWS_AS(kernel_series_sum(1, 0.5, 0, 1.0), DomainError);
}

TEST_CASE("agreement with the power series inside |z| <= 0.9") {
  for (int k = 0; k < 300; ++k) {
    const cplx z = std::polar(uniform(0, 0.9), uniform(-pi, pi));
    const double beta = uniform(0.05, 6);
    REQUIRE(std::abs(eval_L(z, beta, 1e-12) - testing::series_L(z, beta)) < 1e-11);
    REQUIRE(std::abs(eval_P(z, beta, 1e-12) - testing::series_P(z, beta)) < 1e-11);
  }
}

TEST_CASE("L near the unit circle against an independent quadrature") {
  const cplx z = -std::exp(-1.0);
  const cplx ref = tanh_sinh_L(z, 1);
  CHECK(std::abs(eval_L(z, 1, 1e-12) - ref) < 1e-10);
  // closed form at beta = 1: -1 + ln(1+z)/z
  CHECK(std::abs(ref - (-1.0 + std::log(1.0 + z) / z)) < 1e-13);
  for (int k = 0; k < 100; ++k) {
    const cplx zz = std::polar(1 - std::pow(10, uniform(-6, -1)), uniform(-pi, pi));
    const double beta = uniform(0.1, 3);
    const LerchEval e = lerch_L(zz, beta, 1e-10);
    REQUIRE(std::abs(e.value - tanh_sinh_L(zz, beta)) < 1e-9);
    REQUIRE(e.error_estimate < 1e-10);
  }
}

TEST_CASE("conjugate symmetry") {
  for (int k = 0; k < 500; ++k) {
    const cplx z = std::polar(uniform(0, 0.999), uniform(-pi, pi));
    const double beta = uniform(0.05, 5);
    REQUIRE(std::abs(eval_L(std::conj(z), beta) - std::conj(eval_L(z, beta))) < 1e-12);
    REQUIRE(std::abs(eval_P(std::conj(z), beta) - std::conj(eval_P(z, beta))) < 1e-12);
  }
}

TEST_CASE("P is -z dL/dz by complex step") {
  const double h = 1e-20;
  const double z = std::exp(-1.0);
  const double dL = eval_L(cplx(z, h), 1, 1e-13).imag() / h;
  CHECK(std::abs(eval_P(z, 1, 1e-13).real() - (-z * dL)) < 1e-8);
  for (double beta : {0.3, 1.7, 4.0})
    for (double x : {-0.95, -0.5, 0.2, 0.9}) {
      const double d = eval_L(cplx(x, h), beta, 1e-13).imag() / h;
      CHECK(std::abs(eval_P(x, beta, 1e-13).real() - (-x * d)) < 1e-8);
    }
}

TEST_CASE("real and imaginary split of P") {
  for (int k = 0; k < 40; ++k) {
    const double s = uniform(0.05, 3), th = uniform(-pi, pi), beta = uniform(0.2, 3);
    const cplx p = eval_P(std::exp(cplx(-s, -th)), beta, 1e-12);
    const double re = half_line([&](double t) {
      if (s + t > 700) return 0.0;
      const double c = std::cosh(s + t) + std::cos(th);
      return std::exp(-beta * t) * (1 + std::cosh(s + t) * std::cos(th)) / (2 * c * c);
    });
    const double im = half_line([&](double t) {
      if (s + t > 700) return 0.0;
      const double c = std::cosh(s + t) + std::cos(th);
      return -std::exp(-beta * t) * std::sinh(s + t) * std::sin(th) / (2 * c * c);
    });
    REQUIRE(std::abs(p.real() - re) < 1e-9);
    REQUIRE(std::abs(p.imag() - im) < 1e-9);
  }
}

TEST_CASE("bound on |P|") {
  for (int k = 0; k < 1000; ++k) {
    const double s = uniform(0.01, 4), th = uniform(-pi, pi), beta = uniform(0.05, 5);
    const double bound = 1 / (2 * beta * (std::cosh(s) + std::cos(th)));
    REQUIRE(std::abs(eval_P(std::exp(cplx(-s, th)), beta)) <= bound * (1 + 1e-12) + 1e-10);
  }
}

TEST_CASE("Lipschitz bound in s") {
  for (int k = 0; k < 300; ++k) {
    const double s1 = uniform(0.01, 3), s2 = s1 + uniform(0, 2), th = uniform(-pi, pi), beta = uniform(0.05, 5);
    const cplx d = eval_P(std::exp(cplx(-s2, th)), beta) - eval_P(std::exp(cplx(-s1, th)), beta);
    REQUIRE(std::abs(d) <= (s2 - s1) / (2 * (std::cosh(s1) + std::cos(th))) + 2e-10);
  }
}

TEST_CASE("integration by parts form of L") {
  for (int k = 0; k < 30; ++k) {
    const cplx z = std::polar(uniform(0.1, 0.98), uniform(-pi, pi));
    const double beta = uniform(0.2, 3);
    const double re = half_line([&](double t) {
      return beta * std::log(std::abs((1.0 + z * std::exp(-t)) / (1.0 + z))) * std::exp(-beta * t);
    });
    const double im = half_line([&](double t) {
      return beta * std::arg((1.0 + z * std::exp(-t)) / (1.0 + z)) * std::exp(-beta * t);
    });
    const cplx L = eval_L(z, beta, 1e-12);
    REQUIRE(std::abs(L - cplx(re, im)) < 1e-9);
    const double im2 = half_line([&](double t) {
      return -z.imag() * std::exp(-(beta + 1) * t) / std::norm(1.0 + z * std::exp(-t));
    });
    REQUIRE(std::abs(L.imag() - im2) < 1e-9);
  }
}

TEST_CASE("kernel series sum") {
  SUBCASE("small tau keeps the first term") {
    const double a0 = 0.7, a = 0.3, th = 1.1;
    const cplx e = std::exp(cplx(-a0 + a, th));
    const cplx first = a0 * e / ((1.0 + e) * (1.0 + e));
    CHECK(std::abs(kernel_series_sum(a0, a, th, 1e-14) - first) < 1e-13);
    CHECK(std::abs(kernel_series_sum(a0, a, th, 0) - first) < 1e-15);
  }
  SUBCASE("direct summation") {
    for (int k = 0; k < 50; ++k) {
      const double a0 = uniform(0.01, 2), a = uniform(0.01, 0.99) * a0, th = uniform(-pi, pi), t = uniform(0, 0.99);
      cplx s = 0;
      for (int m = 1; m < 200000; ++m) {
        const cplx e = std::exp(cplx(-m * a0 + a, th));
        s += std::pow(t, m - 1) * e / ((1.0 + e) * (1.0 + e));
      }
      REQUIRE(std::abs(kernel_series_sum(a0, a, th, t) - a0 * s) <= 1e-12 * std::max(1.0, std::abs(a0 * s)));
    }
  }
  SUBCASE("approximation by P") {
    for (int k = 0; k < 1000; ++k) {
      const double a0 = uniform(0.001, 1.5), a = uniform(0.01, 0.99) * a0, th = uniform(-pi, pi),
                   t = uniform(0.01, 0.99);
      const cplx sum = kernel_series_sum(a0, a, th, t);
      const cplx p = eval_P(std::exp(cplx(-(a0 - a), th)), -std::log(t) / a0);
      REQUIRE(std::abs(sum - p) <= 4 * a0 / (std::cosh(a0 - a) + std::cos(th)));
    }
  }
  SUBCASE("gap parameters of a thin shell") {
    // xi_i - xi_e for r_i = 1, r_e = 2, eps = 1e-3
    const double gap = 0.0632, tau = 0.8869;
    for (double th : {0.0, 1.0, 2.5, 3.0, pi}) {
      const cplx sum = kernel_series_sum(2 * gap, gap, th, tau);
      const cplx p = eval_P(std::exp(cplx(-gap, th)), -std::log(tau) / (2 * gap));
      CHECK(std::abs(sum - p) <= 8 * gap / (std::cosh(gap) + std::cos(th)));
    }
    const cplx sum = kernel_series_sum(8, 1, pi, 0.5);
    const cplx p = eval_P(std::exp(cplx(-7, pi)), -std::log(0.5) / 8);
    CHECK(std::abs(sum) < 1e-2);
    CHECK(std::abs(p) < 1e-2);
    CHECK(std::abs(sum - p) <= 32 / (std::cosh(7.0) - 1));
  }
}
