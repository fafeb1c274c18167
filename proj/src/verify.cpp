#include "gapfield/verify.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "gapfield/asymptotics.hpp"
#include "gapfield/charges.hpp"
#include "gapfield/error.hpp"
#include "gapfield/lerch.hpp"
#include "gapfield/oracle.hpp"
#include "gapfield/parallel.hpp"

namespace gapfield {

namespace {

const double pi = std::numbers::pi;

double norm(Point p) { return std::hypot(p.x, p.y); }
Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

double sup_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_over(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

std::vector<double> theta_grid(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = -pi + 2 * pi * j / n;
  return t;
}

// max of f over the levels x angles product, on the worker pool
double level_sup(const std::vector<double>& levels, int n_theta, const std::function<double(BipolarPoint)>& f) {
  const std::vector<double> th = theta_grid(n_theta);
  const int n = static_cast<int>(levels.size()) * n_theta;
  std::vector<double> out(n);
  parallel_for(n, [&](int k) { out[k] = f({levels[k / n_theta], th[k % n_theta]}); });
  return max_over(out);
}

std::vector<double> shell_levels(const BipolarFrame& f, int n) {
  std::vector<double> xi(n + 1);
  for (int i = 0; i <= n; ++i) xi[i] = f.xi_e() + (f.xi_i() - f.xi_e()) * i / n;
  return xi;
}

Point grad_minus(const FieldSample& u, const HarmonicBackground& H, Point p) { return sub(u.gradient, H.gradient(p)); }

// --- suite plumbing ---

SuiteResult at_most(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value <= tol ? SuiteStatus::pass : SuiteStatus::fail, value, tol, std::move(detail)};
}

SuiteResult at_least(std::string name, double value, double min, std::string detail = {}) {
  return {std::move(name), value >= min ? SuiteStatus::pass : SuiteStatus::fail, value, min, std::move(detail)};
}

SuiteResult skipped(std::string name, std::string why) {
  return {std::move(name), SuiteStatus::skip, 0, 0, std::move(why)};
}

struct Rng {
  std::mt19937_64 gen{kVerifySeed};
  double operator()(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
};

std::string fmt(const char* f, double a, double b = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const CoreShellConfig kFieldConfig{1, 2, 0.1, 1, 0.01};
const CoreShellConfig kChargeConfig{1, 2, 0.001, 1, 0.03};
const TwoDiskConfig kTwoDiskConfig{1.5, 2, 0.005, 10, 15};

struct CoreShell {
  CoreShellConfig cfg;
  BipolarFrame frame;
  MaterialContrast contrast;
  explicit CoreShell(const CoreShellConfig& c)
      : cfg(c), frame(BipolarFrame::core_shell(c)), contrast(contrast_from_conductivities(c, frame)) {}
};

CoreShellConfig with_epsilon(CoreShellConfig c, double eps) {
  c.epsilon = eps;
  return c;
}

// Core-shell geometry of the config, or the reference one for two-disk configs.
CoreShellConfig core_shell_of(const ExperimentConfig& cfg, const CoreShellConfig& fallback) {
  return cfg.layout == Layout::core_shell ? cfg.core_shell : fallback;
}

bool blow_up(const CoreShellConfig& c) {
  const CoreShell s(c);
  return s.contrast.regime == Regime::blow_up_possible;
}

HarmonicBackground linear_or_x(const HarmonicBackground& H) {
  const auto [cx, cy] = linear_coefficients(H);
  return (cx == 0 && cy == 0) ? HarmonicBackground::linear(1, 0) : HarmonicBackground::linear(cx, cy);
}

std::vector<double> list_or(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

LevelSampling sampling_of(const ExperimentConfig& cfg) { return {cfg.sweep.xi_levels, cfg.sweep.theta_samples}; }

// --- contrast ---

SuiteResult contrast_check(const ExperimentConfig& cfg) {
  double beta, tau, residual;
  if (cfg.layout == Layout::core_shell) {
    const CoreShell s(cfg.core_shell);
    const auto& g = cfg.core_shell;
    const double ti = (g.k_i - g.k_e) / (g.k_i + g.k_e), te = (1 - g.k_e) / (1 + g.k_e);
    beta = s.contrast.beta;
    tau = s.contrast.tau;
    residual = std::max({std::abs(s.contrast.tau_i - ti), std::abs(s.contrast.tau_e - te), std::abs(tau - ti * te)});
  } else {
    const auto& g = cfg.two_disks;
    const BipolarFrame f = BipolarFrame::two_disks(g);
    const TwoDiskContrast c = two_disk_contrast(g, f);
    const double t1 = (g.k_1 - 1) / (g.k_1 + 1), t2 = (g.k_2 - 1) / (g.k_2 + 1);
    beta = c.beta;
    tau = c.tau;
    residual = std::max({std::abs(c.tau_1 - t1), std::abs(c.tau_2 - t2), std::abs(tau - t1 * t2)});
  }
  if (std::isfinite(beta)) {
    const double r_star = cfg.layout == Layout::core_shell ? BipolarFrame::core_shell(cfg.core_shell).r_star()
                                                           : BipolarFrame::two_disks(cfg.two_disks).r_star();
    const double eps = cfg.layout == Layout::core_shell ? cfg.core_shell.epsilon : cfg.two_disks.epsilon;
    residual = std::max(residual, std::abs(beta - r_star * (-std::log(tau)) / (4 * std::sqrt(eps))) / beta);
  }
  const std::string detail = fmt("beta=%.15g tau=%.15g", beta, tau);
  if (cfg.verify.expect_beta || cfg.verify.expect_tau) {
    double d = 0;
    if (cfg.verify.expect_beta) d = std::max(d, std::isfinite(beta) ? std::abs(beta - *cfg.verify.expect_beta)
                                                      : std::numeric_limits<double>::infinity());
    if (cfg.verify.expect_tau) d = std::max(d, std::abs(tau - *cfg.verify.expect_tau));
    return at_most("contrast", d, cfg.tolerance.contrast, detail);
  }
  return at_most("contrast", residual, 1e-14, detail);
}

// --- lerch ---

SuiteResult lerch_conjugate(const ExperimentConfig& cfg) {
  Rng u;
  double m = 0;
  for (int k = 0; k < 1000; ++k) {
    const cplx z = std::polar(u(0, 0.999), u(-pi, pi));
    const double beta = u(0.05, 5);
    m = std::max(m, std::abs(eval_L(std::conj(z), beta, cfg.tolerance.lerch) -
                             std::conj(eval_L(z, beta, cfg.tolerance.lerch))));
    m = std::max(m, std::abs(eval_P(std::conj(z), beta, cfg.tolerance.lerch) -
                             std::conj(eval_P(z, beta, cfg.tolerance.lerch))));
  }
  return at_most("lerch.conjugate", m, 1e-12);
}

// |P(e^{-s + i theta})| <= 1 / (2 beta (cosh s + cos theta)); value is the worst ratio
SuiteResult lerch_bound(const ExperimentConfig& cfg) {
  Rng u;
  double m = 0;
  for (int k = 0; k < 1000; ++k) {
    const double s = u(0.01, 4), th = u(-pi, pi), beta = u(0.05, 5);
    const double bound = 1 / (2 * beta * (std::cosh(s) + std::cos(th)));
    m = std::max(m, std::abs(eval_P(std::exp(cplx(-s, th)), beta, cfg.tolerance.lerch)) / (bound * (1 + 1e-12) + 1e-10));
  }
  return at_most("lerch.bound", m, 1);
}

// kernel sum against P(.; -ln(t)/a0), worst ratio to 4 a0 / (cosh(a0 - a) + cos theta)
SuiteResult lerch_kernel(const ExperimentConfig& cfg) {
  Rng u;
  double m = 0;
  for (int k = 0; k < 1000; ++k) {
    const double a0 = u(0.001, 1.5), a = u(0.01, 0.99) * a0, th = u(-pi, pi), t = u(0.01, 0.99);
    const cplx sum = kernel_series_sum(a0, a, th, t);
    const cplx p = eval_P(std::exp(cplx(-(a0 - a), th)), -std::log(t) / a0, cfg.tolerance.lerch);
    m = std::max(m, std::abs(sum - p) / (4 * a0 / (std::cosh(a0 - a) + std::cos(th))));
  }
  return at_most("lerch.kernel", m, 1);
}

SuiteResult lerch_derivative(const ExperimentConfig&) {
  const double h = 1e-20;
  double m = 0;
  for (double beta : {0.3, 1.0, 1.7, 4.0})
    for (double x : {-0.95, -0.5, 0.2, std::exp(-1.0), 0.9}) {
      const double d = eval_L(cplx(x, h), beta, 1e-13).imag() / h;
      m = std::max(m, std::abs(eval_P(x, beta, 1e-13).real() - (-x * d)));
    }
  return at_most("lerch.derivative", m, 1e-8);
}

// --- charges ---

CoreShellConfig charge_config(const ExperimentConfig& cfg) {
  if (cfg.layout == Layout::core_shell && blow_up(cfg.core_shell)) return cfg.core_shell;
  return kChargeConfig;
}

SuiteResult charges_identity(const ExperimentConfig& cfg) {
  const CoreShell s(charge_config(cfg));
  const BipolarFrame& f = s.frame;
  const double a = f.alpha();
  Rng u;
  double m = 0;
  int short_cases = 0;
  for (double xi0 : {0.0, 0.5 * f.xi_i(), f.xi_i()})
    for (double beta : {0.6, 1.0, 1.8})
      for (PoleSide side : {PoleSide::right, PoleSide::left}) {
        int tested = 0;
        for (int k = 0; k < 2000 && tested < 50; ++k) {
          const Point p{u(-4, 4) * a, u(-3, 3) * a};
          if (std::abs(p.y) < 0.05 * a) continue;
          BipolarPoint b;
          try {
            b = f.to_bipolar(p);
          } catch (const DomainError&) {
            continue;
          }
          const bool right = side == PoleSide::right;
          if (right ? !(b.xi < 2 * xi0 - 0.05) : !(b.xi > -2 * xi0 + 0.05)) continue;
          const cplx w(b.xi, b.theta);
          const cplx L = eval_L(right ? std::exp(w - 2 * xi0) : std::exp(-w - 2 * xi0), beta, 1e-12);
          const cplx q = lerch_via_charges(f, xi0, beta, p, side);
          const double r = lerch_charge_remainder(f, xi0, beta, p, side);
          m = std::max({m, std::abs(q.real() + r - L.real()), std::abs(q.imag() - L.imag())});
          ++tested;
        }
        if (tested < 50) ++short_cases;
      }
  if (short_cases) return {"charges.identity", SuiteStatus::fail, m, 1e-7, "too few admissible sample points"};
  return at_most("charges.identity", m, 1e-7);
}

SuiteResult charges_derivative(const ExperimentConfig&) {
  double m = 0;
  for (double beta : {0.4, 1.0, 2.3})
    for (double xi0 : {0.0, 0.05, 0.7})
      for (PoleSide side : {PoleSide::right, PoleSide::left}) {
        const ChargeProfile p = make_profile(side, ChargeKind::monopole, 0.08, beta, xi0, 1.3);
        const double len = std::isinf(p.far_end()) ? 10.0 : std::abs(p.far_end() - p.pole());
        for (int k = 1; k < 40; ++k) {
          const double sigma = len * k / 40.0, h = 1e-6 * std::min(sigma, len - sigma);
          const double d = (p.psi_at(sigma + h) - p.psi_at(sigma - h)) / (2 * h);
          m = std::max(m, std::abs(d - p.phi_at(sigma)) / std::abs(p.phi_at(sigma)));
        }
      }
  return at_most("charges.derivative", m, 1e-6);
}

double total_charge(const ChargeProfile& p) {
  const auto f = [&](double s) { return p.phi_at(s); };
  boost::math::quadrature::tanh_sinh<double> ts;
  if (std::isinf(p.far_end())) {
    boost::math::quadrature::exp_sinh<double> es;
    return ts.integrate(f, 0.0, p.alpha, 1e-14) + es.integrate(f, p.alpha, std::numeric_limits<double>::infinity(), 1e-14);
  }
  return ts.integrate(f, 0.0, std::abs(p.far_end() - p.pole()), 1e-14);
}

SuiteResult charges_totals(const ExperimentConfig& cfg) {
  double m = 0;
  const CoreShell s(charge_config(cfg));
  for (const auto& t : core_shell_charges(s.frame, s.contrast, 1, 0).terms) {
    const double expect = t.profile.side == PoleSide::left ? s.contrast.tau + s.contrast.tau_e
                                                           : s.contrast.tau + s.contrast.tau_i;
    m = std::max(m, std::abs(total_charge(t.profile) - expect) / std::abs(expect));
  }
  TwoDiskConfig td = kTwoDiskConfig;
  if (cfg.layout == Layout::two_disks && cfg.two_disks.k_1 > 1 && cfg.two_disks.k_2 > 1) td = cfg.two_disks;
  const BipolarFrame f = BipolarFrame::two_disks(td);
  const TwoDiskContrast c = two_disk_contrast(td, f);
  for (const auto& t : two_disk_charges(f, c, TwoDiskCase::resistive, 1, 0).terms) {
    const double expect = t.profile.side == PoleSide::left ? c.tau + c.tau_1 : c.tau + c.tau_2;
    m = std::max(m, std::abs(total_charge(t.profile) - expect) / std::abs(expect));
  }
  return at_most("charges.totals", m, 1e-8);
}

SuiteResult charges_exponent(const ExperimentConfig& cfg) {
  const CoreShell s(charge_config(cfg));
  double m = 0;
  for (double beta : {s.contrast.beta, 0.63, 1.0, 1.9}) {
    const ChargeProfile p = make_profile(PoleSide::right, ChargeKind::monopole, s.frame.alpha(), beta, s.frame.xi_i(), 1);
    const double s1 = 1e-8 * s.frame.alpha(), s2 = 1e-6 * s.frame.alpha();
    const double slope = std::log(p.phi_at(s2) / p.phi_at(s1)) / std::log(s2 / s1);
    m = std::max(m, std::abs(slope - (beta - 1)));
  }
  return at_most("charges.exponent", m, 0.05);
}

SuiteResult charges_remainder(const ExperimentConfig& cfg) {
  const CoreShellConfig base = charge_config(cfg);
  std::vector<double> sups;
  for (double eps : {0.1, 0.01, 0.001}) {
    const CoreShell s(with_epsilon(base, eps));
    sups.push_back(shell_sup_charge_difference(s.frame, s.contrast, 1, 1, sampling_of(cfg)));
  }
  return at_most("charges.remainder", spread(sups), 2, fmt("sup %.6g .. %.6g", sups.front(), sups.back()));
}

// --- layer potentials ---

SuiteResult layer_identity(const ExperimentConfig&) {
  const Circle c{{0.7, -0.4}, 1.3};
  const TestHarmonic vin{[](Point p) {
                           const cplx z(p.x - 0.2, p.y + 0.1);
                           return (z * z).real() + (z * z * z).imag();
                         },
                         [](Point p) {
                           const cplx z(p.x - 0.2, p.y + 0.1);
                           const cplx d = 2.0 * z + cplx(0, -1) * 3.0 * z * z;
                           return Point{d.real(), -d.imag()};
                         }};
  const TestHarmonic vout{[&](Point p) {
                            const cplx z = cplx(p.x - c.center.x, p.y - c.center.y) - cplx(0.3, 0.2);
                            return (1.0 / z).real() + (1.0 / (z * z)).imag();
                          },
                          [&](Point p) {
                            const cplx z = cplx(p.x - c.center.x, p.y - c.center.y) - cplx(0.3, 0.2);
                            const cplx d = -1.0 / (z * z) + cplx(0, -1) * (-2.0) / (z * z * z);
                            return Point{d.real(), -d.imag()};
                          }};
  Rng u;
  double m = 0;
  for (int k = 0; k < 40; ++k) {
    const double ang = u(-pi, pi), rin = u(0, 0.8) * c.radius, rout = u(1.25, 3) * c.radius;
    const Point pin{c.center.x + rin * std::cos(ang), c.center.y + rin * std::sin(ang)};
    const Point pout{c.center.x + rout * std::cos(ang), c.center.y + rout * std::sin(ang)};
    for (Point p : {pin, pout}) {
      m = std::max(m, std::abs(disk_layer_identity_check(c, vin, HarmonicSide::interior, p, 256)));
      m = std::max(m, std::abs(disk_layer_identity_check(c, vout, HarmonicSide::exterior, p, 256)));
    }
  }
  return at_most("layer.identity", m, 1e-10);
}

HarmonicBackground nontrivial(const HarmonicBackground& H) {
  return H.degree() >= 1 ? H : HarmonicBackground{0, {1, 0.2}, {0.4, -0.3}};
}

SuiteResult layer_jump(const ExperimentConfig& cfg) {
  const HarmonicBackground H = nontrivial(cfg.H);
  DenseSystem sys = cfg.layout == Layout::core_shell
                        ? [&] {
                            const CoreShell s(cfg.core_shell);
                            return assemble_core_shell(s.frame, s.contrast, H, cfg.tolerance.oracle_nodes);
                          }()
                        : [&] {
                            const BipolarFrame f = BipolarFrame::two_disks(cfg.two_disks);
                            return assemble_two_disk(f, two_disk_contrast(cfg.two_disks, f), H,
                                                     cfg.tolerance.oracle_nodes);
                          }();
  const BoundaryDensities d = solve_densities(sys);
  double m = 0;
  for (int j = 0; j < static_cast<int>(d.boundaries.size()); ++j) {
    if (std::isinf(sys.lambda[j])) continue;
    const double scale = sup_abs(d.phi[j]);
    if (scale == 0) continue;
    const auto plus = boundary_normal_derivative(d, H, j, +1), minus = boundary_normal_derivative(d, H, j, -1);
    for (int a = 0; a < d.boundaries[j].size(); ++a) {
      m = std::max(m, std::abs(plus[a] - (sys.lambda[j] + 0.5) * d.phi[j][a]) / scale);
      m = std::max(m, std::abs(minus[a] - (sys.lambda[j] - 0.5) * d.phi[j][a]) / scale);
    }
  }
  return at_most("layer.jump", m, 1e-8);
}

// tangential derivative of u against the reciprocal problem's flux
SuiteResult layer_dual(const ExperimentConfig& cfg) {
  const CoreShellConfig g = core_shell_of(cfg, kFieldConfig);
  const HarmonicBackground H = nontrivial(cfg.H), Ht = H.conjugate();
  const CoreShell s(g), t({g.r_i, g.r_e, g.epsilon, 1 / g.k_i, 1 / g.k_e});
  const BoundaryDensities du = solve_densities(assemble_core_shell(s.frame, s.contrast, H, cfg.tolerance.oracle_nodes));
  const BoundaryDensities dv = solve_densities(assemble_core_shell(t.frame, t.contrast, Ht, cfg.tolerance.oracle_nodes));
  const double factor[2] = {1 / g.k_e, 1.0};
  double m = 0;
  for (int j = 0; j < 2; ++j) {
    const auto uT = boundary_tangential_derivative(du, H, j);
    const auto vn = boundary_normal_derivative(dv, Ht, j, +1);
    double r = 0;
    for (std::size_t a = 0; a < uT.size(); ++a) r = std::max(r, std::abs(uT[a] + factor[j] * vn[a]));
    m = std::max(m, r / sup_abs(uT));
  }
  return at_most("layer.dual", m, 1e-5);
}

// --- field sweeps ---

SuiteResult crossval(const ExperimentConfig& cfg) {
  if (cfg.layout != Layout::core_shell) return skipped("crossval", "needs a core-shell geometry");
  const HarmonicBackground H = linear_or_x(cfg.H);
  const CoreShell s(cfg.core_shell);
  const TransmissionSeries ts(s.frame, s.contrast, cfg.tolerance.series);
  const BoundaryDensities d = solve_densities(assemble_core_shell(s.frame, s.contrast, H, cfg.tolerance.oracle_nodes));
  const CrossValidation cv = cross_validate(ts, d, H);
  const double tol = cfg.tolerance.crossval > 0 ? cfg.tolerance.crossval : (cfg.core_shell.epsilon >= 0.01 ? 1e-6 : 1e-5);
  char buf[96];
  std::snprintf(buf, sizeof buf, "points=%d nodes=%d", cv.points, d.boundaries[0].size());
  return at_most("crossval", std::max(cv.value_error, cv.gradient_error), tol, buf);
}

struct RemainderSweep {
  std::vector<double> remainder, full;
};

RemainderSweep remainder_sweep(const CoreShellConfig& base, const HarmonicBackground& H, const std::vector<double>& eps,
                               LevelSampling ls, double tol) {
  RemainderSweep r;
  for (double e : eps) {
    const CoreShell s(with_epsilon(base, e));
    const TransmissionSeries ts(s.frame, s.contrast, tol);
    r.remainder.push_back(shell_sup_remainder(ts, H, ls));
    r.full.push_back(shell_sup_gradient(ts, H, ls));
  }
  return r;
}

std::vector<SuiteResult> remainder_checks(const ExperimentConfig& cfg) {
  if (cfg.layout != Layout::core_shell || !blow_up(cfg.core_shell))
    return {skipped("remainder.stability", "needs a core-shell blow-up regime"),
            skipped("remainder.growth", "needs a core-shell blow-up regime")};
  const std::vector<double> eps = list_or(cfg.sweep.epsilon, {0.1, 0.01, 0.001});
  const RemainderSweep r = remainder_sweep(cfg.core_shell, linear_or_x(cfg.H), eps, sampling_of(cfg), cfg.tolerance.series);
  // growth from the widest to the narrowest gap
  const auto lo = std::min_element(eps.begin(), eps.end()) - eps.begin();
  const auto hi = std::max_element(eps.begin(), eps.end()) - eps.begin();
  return {at_most("remainder.stability", spread(r.remainder), 2,
                  fmt("sup|grad r| %.6g .. %.6g", *std::min_element(r.remainder.begin(), r.remainder.end()),
                      *std::max_element(r.remainder.begin(), r.remainder.end()))),
          at_least("remainder.growth", r.full[lo] / r.full[hi], 5, fmt("sup|grad(u-H)| %.6g -> %.6g", r.full[hi], r.full[lo]))};
}

SuiteResult scaling_check(const ExperimentConfig& cfg, const std::string& name, double C_x, double C_y) {
  const CoreShellConfig base = core_shell_of(cfg, kFieldConfig);
  const std::vector<double> ks = list_or(cfg.sweep.k_e, {0.01, 0.03}), eps = list_or(cfg.sweep.epsilon, {1e-2, 1e-3, 1e-4});
  const HarmonicBackground H = HarmonicBackground::linear(C_x, C_y);
  std::vector<double> scaled;
  double beta_max = 0;
  for (double k : ks)
    for (double e : eps) {
      CoreShellConfig c = with_epsilon(base, e);
      c.k_e = k;
      const CoreShell s(c);
      if (s.contrast.regime != Regime::blow_up_possible) return skipped(name, "sweep leaves the blow-up regime");
      beta_max = std::max(beta_max, s.contrast.beta);
      const TransmissionSeries ts(s.frame, s.contrast, cfg.tolerance.series);
      scaled.push_back(shell_sup_gradient(ts, H, sampling_of(cfg)) / blow_up_scale(s.contrast, C_x, C_y));
    }
  return at_most(name, spread(scaled), 3, fmt("max beta %.6g", beta_max));
}

double flatness(const std::vector<double>& v) { return spread(v) - 1; }

const std::vector<double> kFlatEps{1e-2, 1e-3, 1e-4};

SuiteResult noblowup_bounded(const ExperimentConfig& cfg) {
  CoreShellConfig base = core_shell_of(cfg, kFieldConfig);
  base.k_i = 10;
  base.k_e = 5;
  const HarmonicBackground H = linear_or_x(cfg.H);
  std::vector<double> sups;
  for (double e : kFlatEps) {
    const CoreShell s(with_epsilon(base, e));
    const TransmissionSeries ts(s.frame, s.contrast, cfg.tolerance.series);
    sups.push_back(std::max(shell_sup_gradient(ts, H, sampling_of(cfg)), outside_sup_gradient(ts, H, sampling_of(cfg))));
  }
  return at_most("noblowup.bounded", flatness(sups), 0.1, fmt("sup %.6g .. %.6g", sups.front(), sups.back()));
}

SuiteResult noblowup_quadratic(const ExperimentConfig& cfg) {
  const CoreShellConfig base = core_shell_of(cfg, kFieldConfig);
  const HarmonicBackground H{0, {0, 1}, {0, 0}};
  std::vector<double> sups;
  for (double e : kFlatEps) {
    const CoreShell s(with_epsilon(base, e));
    const int M = cfg.tolerance.oracle_nodes > 0 ? cfg.tolerance.oracle_nodes : auto_node_count(s.frame);
    sups.push_back(shell_boundary_sup_gradient(reflection_densities(s.frame, s.contrast, H, M), H));
  }
  return at_most("noblowup.quadratic", flatness(sups), 0.1, fmt("sup %.6g .. %.6g", sups.front(), sups.back()));
}

SuiteResult noblowup_outside(const ExperimentConfig& cfg) {
  const CoreShellConfig base = core_shell_of(cfg, kFieldConfig);
  if (!blow_up(base)) return skipped("noblowup.outside", "needs a core-shell blow-up regime");
  const HarmonicBackground H = linear_or_x(cfg.H);
  std::vector<double> sups;
  for (double e : kFlatEps) {
    const CoreShell s(with_epsilon(base, e));
    const TransmissionSeries ts(s.frame, s.contrast, cfg.tolerance.series);
    sups.push_back(outside_sup_gradient(ts, H, sampling_of(cfg)));
  }
  return at_most("noblowup.outside", flatness(sups), 0.1, fmt("sup %.6g .. %.6g", sups.front(), sups.back()));
}

struct Check {
  std::string name;
  std::function<std::vector<SuiteResult>(const ExperimentConfig&)> run;
};

template <class F>
Check single(std::string name, F f) {
  return {name, [f](const ExperimentConfig& c) { return std::vector<SuiteResult>{f(c)}; }};
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      single("contrast", contrast_check),
      single("lerch.conjugate", lerch_conjugate),
      single("lerch.bound", lerch_bound),
      single("lerch.kernel", lerch_kernel),
      single("lerch.derivative", lerch_derivative),
      single("charges.identity", charges_identity),
      single("charges.derivative", charges_derivative),
      single("charges.totals", charges_totals),
      single("charges.exponent", charges_exponent),
      single("charges.remainder", charges_remainder),
      single("layer.identity", layer_identity),
      single("layer.jump", layer_jump),
      single("layer.dual", layer_dual),
      single("crossval", crossval),
      {"remainder", remainder_checks},
      single("scaling.x", [](const ExperimentConfig& c) { return scaling_check(c, "scaling.x", 1, 0); }),
      single("scaling.y", [](const ExperimentConfig& c) { return scaling_check(c, "scaling.y", 0, 1); }),
      single("noblowup.bounded", noblowup_bounded),
      single("noblowup.quadratic", noblowup_quadratic),
      single("noblowup.outside", noblowup_outside),
  };
  return all;
}

std::string group_of(const std::string& name) { return name.substr(0, name.find('.')); }

}  // namespace

double shell_sup_gradient(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s) {
  const BipolarFrame& f = series.frame();
  return level_sup(shell_levels(f, s.xi_levels), s.theta_samples, [&](BipolarPoint b) {
    const FieldSample u = series.evaluate_branch(H, b, Region::shell);
    return norm(grad_minus(u, H, f.to_cartesian(b)));
  });
}

double shell_sup_remainder(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s) {
  const BipolarFrame& f = series.frame();
  const auto [cx, cy] = linear_coefficients(H);
  const double r2 = f.r_star() * f.r_star();
  return level_sup(shell_levels(f, s.xi_levels), s.theta_samples, [&](BipolarPoint b) {
    const Point p = f.to_cartesian(b);
    const Point g = grad_minus(series.evaluate_branch(H, b, Region::shell), H, p);
    const SingularGradient q = grad_singular_q(f, series.contrast(), b, Region::shell);
    return norm({g.x - r2 * (cx * q.grad_re.x + cy * q.grad_im.x), g.y - r2 * (cx * q.grad_re.y + cy * q.grad_im.y)});
  });
}

double outside_sup_gradient(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s) {
  const BipolarFrame& f = series.frame();
  const double gap = f.xi_i() - f.xi_e();
  std::vector<double> core, ext{0.5 * f.xi_e(), -0.5 * f.xi_e(), -f.xi_e()};
  for (double m : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    core.push_back(f.xi_i() + m * gap);
    if (f.xi_e() - m * gap > 0.5 * f.xi_e()) ext.push_back(f.xi_e() - m * gap);
  }
  const auto sup = [&](const std::vector<double>& lv, Region r) {
    return level_sup(lv, s.theta_samples, [&](BipolarPoint b) {
      return norm(grad_minus(series.evaluate_branch(H, b, r), H, f.to_cartesian(b)));
    });
  };
  return std::max(sup(core, Region::core), sup(ext, Region::exterior));
}

double shell_boundary_sup_gradient(const BoundaryDensities& d, const HarmonicBackground& H) {
  // core circle: shell outside; shell circle: shell inside
  const int side[2] = {+1, -1};
  double m = 0;
  for (int j = 0; j < 2; ++j) {
    const auto& b = d.boundaries[j];
    const auto un = boundary_normal_derivative(d, H, j, side[j]);
    const auto ut = boundary_tangential_derivative(d, H, j);
    const auto hn = normal_derivative(b, H);
    for (int a = 0; a < b.size(); ++a) {
      const Point n = b.normals[a];
      const double ht = dot(H.gradient(b.nodes[a]), {-n.y, n.x});
      m = std::max(m, std::hypot(un[a] - hn[a], ut[a] - ht));
    }
  }
  return m;
}

double shell_sup_charge_difference(const BipolarFrame& frame, const MaterialContrast& c, double C_x, double C_y,
                                   LevelSampling s) {
  const LineChargeRepresentation rep = core_shell_charges(frame, c, C_x, C_y);
  const double r2 = frame.r_star() * frame.r_star();
  return level_sup(shell_levels(frame, s.xi_levels), s.theta_samples, [&](BipolarPoint b) {
    const Point p = frame.to_cartesian(b);
    const Point gl = eval_line_field(rep, p).gradient;
    const SingularGradient g = grad_singular_q(frame, c, b, Region::shell);
    return norm(sub(gl, {r2 * (C_x * g.grad_re.x + C_y * g.grad_im.x), r2 * (C_x * g.grad_re.y + C_y * g.grad_im.y)}));
  });
}

CrossValidation cross_validate(const TransmissionSeries& series, const BoundaryDensities& oracle,
                               const HarmonicBackground& H, int n) {
  std::vector<double> ev(n * n, -1), eg(n * n, -1);
  parallel_for(n * n, [&](int k) {
    const Point p{-3 + 6 * (k % n + 0.5) / n, -3 + 6 * (k / n + 0.5) / n};
    FieldSample a;
    try {
      a = eval_oracle(oracle, H, p);
    } catch (const DomainError&) {
      return;
    }
    const FieldSample r = series.evaluate(H, p);
    ev[k] = std::abs(a.value - r.value) / std::max(1.0, std::abs(r.value));
    eg[k] = norm(sub(a.gradient, r.gradient)) / std::max(1.0, norm(r.gradient));
  });
  CrossValidation cv;
  for (int k = 0; k < n * n; ++k) {
    if (ev[k] < 0) continue;
    ++cv.points;
    cv.value_error = std::max(cv.value_error, ev[k]);
    cv.gradient_error = std::max(cv.gradient_error, eg[k]);
  }
  return cv;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : checks()) {
      const std::string g = group_of(c.name);
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_suites(const ExperimentConfig& cfg, const std::vector<std::string>& selection) {
  for (const auto& s : selection) {
    bool known = false;
    for (const auto& c : checks()) known = known || s == c.name || s == group_of(c.name);
    if (!known) throw ConfigError("unknown suite '" + s + "'");
  }
  std::vector<SuiteResult> out;
  for (const auto& c : checks()) {
    const bool on = selection.empty() || std::find_if(selection.begin(), selection.end(), [&](const std::string& s) {
                                           return s == c.name || s == group_of(c.name);
                                         }) != selection.end();
    if (!on) continue;
    for (auto& r : c.run(cfg)) out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const SuiteResult& r) {
  const char* st = r.status == SuiteStatus::pass ? "PASS" : r.status == SuiteStatus::fail ? "FAIL" : "SKIP";
  char buf[256];
  std::snprintf(buf, sizeof buf, "SUITE %s %s %.15g %.15g", r.name.c_str(), st, r.value, r.tolerance);
  std::string s = buf;
  if (!r.detail.empty()) s += "  # " + r.detail;
  return s;
}

}  // namespace gapfield
