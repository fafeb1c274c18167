#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace gapfield {

template <class T>
struct QuadResult {
  T value{};
  double error = 0;
  int panels = 0;
};

// Globally adaptive Gauss-Kronrod (7/15): the panel with the largest error
// estimate is bisected until the summed estimate is below max(tol, rel |I|).
template <class F>
auto adaptive_gk(F&& f, double a, double b, double tol, double rel = 0, int max_panels = 4000)
    -> QuadResult<decltype(f(a))> {
  using T = decltype(f(a));
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Panel {
    double a, b;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  const auto eval = [&](double lo, double hi) {
    double err = 0;
    T v = GK::integrate(f, lo, hi, 0, 0.0, &err);
    return Panel{lo, hi, v, err};
  };
  std::priority_queue<Panel> heap;
  heap.push(eval(a, b));
  T total = heap.top().value;
  double err = heap.top().error;
  int panels = 1;
  while (err > std::max(tol, rel * std::abs(total)) && panels < max_panels) {
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    Panel l = eval(p.a, m), r = eval(m, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  // Re-sum to drop accumulated cancellation in the running totals.
  T sum{};
  double esum = 0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  return {sum, esum, panels};
}

// 20-point Gauss-Legendre nodes and weights mapped to [a, b].
struct GaussRule {
  std::vector<double> x, w;
  void append(double a, double b) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t k = 0; k < ab.size(); ++k) {
      const double s = ab[k] * h;
      if (ab[k] == 0) {
        x.push_back(c);
        w.push_back(wt[k] * h);
        continue;
      }
      x.push_back(c - s);
      w.push_back(wt[k] * h);
      x.push_back(c + s);
      w.push_back(wt[k] * h);
    }
  }
  // Panels on [a, b] graded geometrically towards a (ratio `ratio`, `levels` panels),
  // followed by `uniform` equal panels on the remainder.
  void append_graded(double a, double b, int levels, double ratio, int uniform) {
    double lo = a + (b - a) * std::pow(ratio, levels);
    append(a, lo);
    for (int k = levels - 1; k >= 1; --k) {
      const double hi = a + (b - a) * std::pow(ratio, k);
      append(lo, hi);
      lo = hi;
    }
    for (int k = 0; k < uniform; ++k) append(lo + (b - lo) * k / uniform, lo + (b - lo) * (k + 1) / uniform);
  }
};

}  // namespace gapfield
