#pragma once

#include <complex>
#include <random>

#include "gapfield/geometry.hpp"

namespace testing {

using gapfield::cplx;
using gapfield::Point;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// Power series of the Lerch integrals, valid for |z| < 1.
inline cplx series_L(cplx z, double beta) {
  cplx s = 0, zk = z;
  for (int k = 0; k < 200000; ++k) {
    const cplx t = zk / (beta + k + 1.0);
    s += (k % 2 ? -1.0 : 1.0) * t;
    if (std::abs(t) < 1e-18 && k > 10) break;
    zk *= z;
  }
  return -s;
}

inline cplx series_P(cplx z, double beta) {
  cplx s = 0, zk = z;
  for (int k = 0; k < 200000; ++k) {
    const cplx t = (k + 1.0) * zk / (beta + k + 1.0);
    s += (k % 2 ? -1.0 : 1.0) * t;
    if (std::abs(t) < 1e-18 && k > 10) break;
    zk *= z;
  }
  return s;
}

// Single disk of conductivity k (center (c,0), radius r) in unit background, H = x.
struct DiskSolution {
  double value;
  Point grad;
};
inline DiskSolution single_disk_x(double c, double r, double k, Point p) {
  const double t = (1 - k) / (1 + k);
  const double dx = p.x - c, dy = p.y;
  const double r2 = dx * dx + dy * dy;
  if (r2 < r * r) return {(1 + t) * dx + c, {1 + t, 0}};
  const double s = t * r * r;
  const double r4 = r2 * r2;
  return {dx + s * dx / r2 + c, {1 + s * (dy * dy - dx * dx) / r4, -2 * s * dx * dy / r4}};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
