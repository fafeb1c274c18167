#include "gapfield/series.hpp"

#include <algorithm>
#include <cmath>

#include "gapfield/error.hpp"

namespace gapfield {

namespace {
constexpr cplx I{0, 1};
}

TransmissionSeries::TransmissionSeries(const BipolarFrame& frame, const MaterialContrast& contrast,
                                       double tol, int min_terms)
    : frame_(frame), contrast_(contrast), tol_(tol) {
  if (frame.layout() != Layout::core_shell) throw DomainError("transmission series needs a core-shell frame");
  if (!(std::abs(contrast.tau) < 1)) throw DomainError("resonant denominator");
  const double alpha = frame.alpha();
  const double xi_i = frame.xi_i(), xi_e = frame.xi_e();
  const double gap = xi_i - xi_e;
  const double ti = contrast.tau_i, te = contrast.tau_e, t = contrast.tau;

  // Bound on the coefficients, used to size the truncation.
  coef_max_ = 2 * alpha * (std::abs(ti * (1 + te)) + std::abs(te) + std::abs(t)) / (1 - std::abs(t));
  if (coef_max_ == 0) coef_max_ = 2 * alpha;
  const int N = std::max(min_terms, terms_needed(xi_e));

  A_.resize(N);
  B_.resize(N);
  double sum = 0;
  for (int n = 1; n <= N; ++n) {
    const double x = std::exp(-2.0 * n * gap);
    const double sgn = (n % 2) ? -1.0 : 1.0;
    const double den = 1 - t * x;
    A_[n - 1] = -2 * alpha * sgn * ti * (te + 1) / den;
    B_[n - 1] = 2 * alpha * sgn * (te + t * x) / den;
    sum += (A_[n - 1] * std::exp(-2.0 * n * xi_i) + B_[n - 1] * std::exp(-2.0 * n * xi_e)) * sgn;
  }
  C_ = -sum;
}

int TransmissionSeries::terms_needed(double decay) const {
  if (!(decay > 0)) throw DomainError("series branch diverges at this point");
  const double K = std::log(1 / tol_) - 2 * std::log(-std::expm1(-decay));
  double n = K / decay;
  for (int it = 0; it < 8; ++it) n = (K + std::log(n + 1)) / decay;
  return static_cast<int>(std::min(std::ceil(n) + 1, 1e9));
}

TransmissionSeries::Value TransmissionSeries::evaluate_U(BipolarPoint b, Region region) const {
  const double xi_i = frame_.xi_i(), xi_e = frame_.xi_e();
  const double xi = b.xi;
  const cplx eit = std::polar(1.0, -b.theta);  // e^{-i theta}
  double decay;
  switch (region) {
    case Region::exterior: decay = 2 * xi_e - xi; break;
    case Region::shell: decay = std::min(2 * xi_i - xi, xi); break;
    case Region::core: decay = xi; break;
    default: throw DomainError("core-shell series has no such region");
  }
  const int n_max = std::min(terms(), terms_needed(decay));

  cplx F = 0, G = 0, dF = 0, dG = 0;
  if (region == Region::exterior) {
    const cplx qa = std::exp(xi - 2 * xi_i) * eit, qb = std::exp(xi - 2 * xi_e) * eit;
    cplx pa = 1, pb = 1;
    for (int n = 1; n <= n_max; ++n) {
      pa *= qa;
      pb *= qb;
      const cplx t = A_[n - 1] * pa + B_[n - 1] * pb;
      F += t;
      dF += double(n) * t;
    }
  } else if (region == Region::shell) {
    const cplx qa = std::exp(xi - 2 * xi_i) * eit, g = std::exp(-xi) * eit;
    cplx pa = 1, pg = 1;
    for (int n = 1; n <= n_max; ++n) {
      pa *= qa;
      pg *= g;
      const cplx ta = A_[n - 1] * pa, tb = B_[n - 1] * pg;
      F += ta;
      dF += double(n) * ta;
      G += tb;
      dG -= double(n) * tb;
    }
  } else {
    const cplx g = std::exp(-xi) * eit;
    cplx pg = 1;
    for (int n = 1; n <= n_max; ++n) {
      pg *= g;
      const cplx t = (A_[n - 1] + B_[n - 1]) * pg;
      G += t;
      dG -= double(n) * t;
    }
  }
  const Point p = frame_.to_cartesian(b);
  const cplx wz = frame_.dw_dz(p);
  Value v;
  v.U = C_ + F + G;
  v.dUdx = dF * std::conj(wz) + dG * wz;
  v.dUdy = -I * dF * std::conj(wz) + I * dG * wz;
  return v;
}

FieldSample TransmissionSeries::evaluate_branch(const HarmonicBackground& H, BipolarPoint b,
                                                Region region) const {
  if (!H.is_linear()) throw DomainError("series path requires a linear background; use the layer path");
  auto [cx, cy] = linear_coefficients(H);
  const Value v = evaluate_U(b, region);
  FieldSample s;
  s.position = frame_.to_cartesian(b);
  s.bipolar = b;
  s.region = region;
  s.value = H.value(s.position) + cx * v.U.real() + cy * v.U.imag();
  const Point gH = H.gradient(s.position);
  s.gradient = {gH.x + cx * v.dUdx.real() + cy * v.dUdx.imag(),
                gH.y + cx * v.dUdy.real() + cy * v.dUdy.imag()};
  return s;
}

FieldSample TransmissionSeries::evaluate(const HarmonicBackground& H, Point p) const {
  const BipolarPoint b = frame_.to_bipolar(p);
  FieldSample s = evaluate_branch(H, b, region_of(frame_, b));
  s.position = p;
  return s;
}

Point level_normal(const BipolarFrame& frame, BipolarPoint b) {
  const Point e = frame.basis(b).first;
  const double s = b.xi > 0 ? -1.0 : 1.0;
  return {s * e.x, s * e.y};
}

BoundaryDensities reflection_densities(const BipolarFrame& frame, const MaterialContrast& contrast,
                                       const HarmonicBackground& H, int M, double tol) {
  if (frame.layout() != Layout::core_shell) throw DomainError("reflection densities need a core-shell frame");
  const double t = contrast.tau, ti = contrast.tau_i, te = contrast.tau_e;
  if (!(std::abs(t) < 1)) throw DomainError("reflection series does not converge for |tau| >= 1");

  BoundaryDensities d;
  d.layout = Layout::core_shell;
  d.boundaries = {discretize_level(frame, frame.xi_i(), M), discretize_level(frame, frame.xi_e(), M)};
  d.boundaries[0].k_in = contrast.k_i;
  d.boundaries[0].k_out = d.boundaries[1].k_in = contrast.k_e;
  d.boundaries[1].k_out = 1;
  d.phi.assign(2, std::vector<double>(M, 0.0));

  // h(target)/h(source) * dH/dnu at (source, theta)
  const auto image = [&](double target, double source, double theta) {
    const BipolarPoint bs{source, theta};
    const Point x = frame.to_cartesian(bs);
    const double dn = dot(H.gradient(x), level_normal(frame, bs));
    return frame.scale_factor({target, theta}) / frame.scale_factor(bs) * dn;
  };

  const std::vector<double>& theta = d.boundaries[0].param;
  for (int j = 0; j < M; ++j) d.phi[1][j] = image(frame.xi_e(), frame.xi_e(), theta[j]);

  const double pref = ti * (1 + te);
  const double stop = tol * (1 - std::abs(t));
  constexpr int m_max = 100000;
  double tm = 1;
  for (int m = 0;; ++m) {
    if (m >= m_max) throw DomainError("reflection series did not converge");
    const double li = frame.reflected_level(m, Interface::inner);
    const double le = frame.reflected_level(m + 1, Interface::outer);
    double sup = 0;
    for (int j = 0; j < M; ++j) {
      const double a = pref * tm * image(frame.xi_i(), li, theta[j]);
      const double b = pref * tm * image(frame.xi_e(), le, theta[j]);
      d.phi[0][j] += a;
      d.phi[1][j] += b;
      sup = std::max({sup, std::abs(a), std::abs(b)});
    }
    if (sup < stop) break;
    tm *= t;
  }
  for (int j = 0; j < M; ++j) {
    d.phi[0][j] *= 2;
    d.phi[1][j] *= -2 * te;
  }
  for (int c = 0; c < 2; ++c) {
    const double mu = weighted_mean(d.boundaries[c], d.phi[c]);
    for (double& v : d.phi[c]) v -= mu;
  }
  return d;
}

FieldSample eval_potential_via_layers(const BipolarFrame& frame, const BoundaryDensities& d,
                                      const HarmonicBackground& H, Point p) {
  FieldSample s = eval_layers(d, H, p, 1.0);
  s.bipolar = frame.to_bipolar(p);
  s.region = region_of(frame, s.bipolar);
  return s;
}

}  // namespace gapfield
