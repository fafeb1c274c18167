#pragma once

#include <utility>
#include <vector>

#include "gapfield/geometry.hpp"

namespace gapfield {

// H = a0 + sum_n (a[n-1] Re z^n + b[n-1] Im z^n).
struct HarmonicBackground {
  double a0 = 0;
  std::vector<double> a, b;

  static HarmonicBackground linear(double C_x, double C_y, double constant = 0);

  int degree() const;
  double value(Point p) const;
  Point gradient(Point p) const;

  // Swaps (a_n, b_n) -> (-b_n, a_n); the constant is dropped.
  HarmonicBackground conjugate() const;
  // Degree <= 1 part through the origin, and the rest (constant included).
  HarmonicBackground linear_part() const;
  HarmonicBackground nonlinear_part() const;
  bool is_linear() const { return degree() <= 1; }
};

// (C_x, C_y) = grad H(0).
std::pair<double, double> linear_coefficients(const HarmonicBackground& H);

}  // namespace gapfield
