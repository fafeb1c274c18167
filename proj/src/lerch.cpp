#include "gapfield/lerch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gapfield/error.hpp"
#include "gapfield/quadrature.hpp"

namespace gapfield {

namespace {

// Relative accuracy floor; absolute targets below this are not attainable in double.
constexpr double kRelFloor = 1e-14;

// e^w - 1 accurate for small |w|.
cplx cexpm1(cplx w) {
  const double x = w.real(), y = w.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2 * sh * sh, std::exp(x) * std::sin(y)};
}

void check_domain(cplx z, double beta) {
  if (!(std::abs(z) < 1 - 1e-12)) throw DomainError("Lerch argument must satisfy |z| < 1");
  if (!(beta > 0) || !std::isfinite(beta)) throw DomainError("Lerch order beta must be positive");
}

// Upper end of the truncated range and the power of 1/(1-|z|) in the tail bound.
double cutoff(cplx z, double beta, double tol, int power) {
  const double r = std::abs(z);
  const double bound = r / ((beta + 1) * std::pow(1 - r, power));
  return std::max(1.0, std::log(4 * bound / tol) / (beta + 1));
}

template <class F>
LerchEval integrate(F&& f, cplx z, double beta, double tol, int power) {
  const double T = cutoff(z, beta, tol, power);
  const double r = std::abs(z);
  const double tail = r * std::exp(-(beta + 1) * T) / ((beta + 1) * std::pow(1 - r, power));
  auto q = adaptive_gk(f, 0.0, T, 0.5 * tol, kRelFloor);
  return {q.value, q.error + tail};
}

}  // namespace

LerchEval lerch_L(cplx z, double beta, double tol) {
  check_domain(z, beta);
  if (z == cplx(0)) return {0, 0};
  const cplx zp = 1.0 + z;
  const auto f = [&](double t) { return -z * std::exp(-(beta + 1) * t) / (zp + z * std::expm1(-t)); };
  return integrate(f, z, beta, tol, 1);
}

LerchEval lerch_P(cplx z, double beta, double tol) {
  check_domain(z, beta);
  if (z == cplx(0)) return {0, 0};
  const cplx zp = 1.0 + z;
  const auto f = [&](double t) {
    const cplx d = zp + z * std::expm1(-t);
    return z * std::exp(-(beta + 1) * t) / (d * d);
  };
  return integrate(f, z, beta, tol, 2);
}

cplx kernel_series_sum(double a0, double a, double theta, double tau) {
  if (!(a0 > 0) || !(a > 0) || !(a < a0)) throw DomainError("kernel sum needs 0 < a < a0");
  if (!(tau >= 0) || !(tau < 1)) throw DomainError("kernel sum needs 0 <= tau < 1");
  const cplx eit = std::polar(1.0, theta);
  cplx sum = 0;
  double tm = 1;
  for (int m = 1; m < 10000000; ++m) {
    const double s = m * a0 - a;
    const cplx x = std::exp(-s) * eit;
    const cplx d = -cexpm1(cplx(-s, theta + std::numbers::pi));
    sum += tm * x / (d * d);
    // remaining terms are bounded by a geometric series
    const double s1 = s + a0;
    const double ratio = tau * std::exp(-a0);
    const double tail = tau * tm * std::exp(-s1) / std::pow(-std::expm1(-s1), 2) / (1 - ratio);
    if (tail <= 1e-15 * std::abs(sum) || tm == 0) break;
    tm *= tau;
  }
  return a0 * sum;
}

}  // namespace gapfield
