#include "gapfield/harmonic.hpp"

#include <algorithm>

namespace gapfield {

HarmonicBackground HarmonicBackground::linear(double C_x, double C_y, double constant) {
  HarmonicBackground h;
  h.a0 = constant;
  h.a = {C_x};
  h.b = {C_y};
  return h;
}

int HarmonicBackground::degree() const {
  int n = static_cast<int>(std::max(a.size(), b.size()));
  while (n > 0) {
    const std::size_t k = n - 1;
    if ((k < a.size() && a[k] != 0) || (k < b.size() && b[k] != 0)) break;
    --n;
  }
  return n;
}

double HarmonicBackground::value(Point p) const {
  const cplx z = to_complex(p);
  cplx zn = 1;
  double v = a0;
  const int n = degree();
  for (int k = 0; k < n; ++k) {
    zn *= z;
    if (k < static_cast<int>(a.size())) v += a[k] * zn.real();
    if (k < static_cast<int>(b.size())) v += b[k] * zn.imag();
  }
  return v;
}

Point HarmonicBackground::gradient(Point p) const {
  // d/dx z^n = n z^(n-1), d/dy z^n = i n z^(n-1)
  const cplx z = to_complex(p);
  cplx zn1 = 1;
  Point g;
  const int n = degree();
  for (int k = 0; k < n; ++k) {
    const cplx d = double(k + 1) * zn1;
    const double ak = k < static_cast<int>(a.size()) ? a[k] : 0;
    const double bk = k < static_cast<int>(b.size()) ? b[k] : 0;
    g.x += ak * d.real() + bk * d.imag();
    g.y += -ak * d.imag() + bk * d.real();
    zn1 *= z;
  }
  return g;
}

HarmonicBackground HarmonicBackground::conjugate() const {
  HarmonicBackground h;
  const std::size_t n = std::max(a.size(), b.size());
  h.a.assign(n, 0);
  h.b.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    h.a[k] = k < b.size() ? -b[k] : 0;
    h.b[k] = k < a.size() ? a[k] : 0;
  }
  return h;
}

HarmonicBackground HarmonicBackground::linear_part() const {
  auto [cx, cy] = linear_coefficients(*this);
  return linear(cx, cy);
}

HarmonicBackground HarmonicBackground::nonlinear_part() const {
  HarmonicBackground h = *this;
  if (!h.a.empty()) h.a[0] = 0;
  if (!h.b.empty()) h.b[0] = 0;
  return h;
}

std::pair<double, double> linear_coefficients(const HarmonicBackground& H) {
  return {H.a.empty() ? 0.0 : H.a[0], H.b.empty() ? 0.0 : H.b[0]};
}

}  // namespace gapfield
