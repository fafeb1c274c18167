#include "gapfield/charges.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "gapfield/error.hpp"
#include "gapfield/lerch.hpp"
#include "gapfield/quadrature.hpp"

namespace gapfield {

namespace {

constexpr int kLevels = 32;
constexpr double kRatio = 0.3;
constexpr int kUniform = 12;

// Gauss panels on [0, 1] graded geometrically towards both ends; xc = 1 - x
// is kept separately since nodes next to 1 are not representable.
struct UnitRule {
  std::vector<double> x, xc, w;
};

UnitRule unit_rule() {
  GaussRule half;
  half.append_graded(0.0, 0.5, kLevels, kRatio, kUniform / 2);
  UnitRule r;
  for (std::size_t k = 0; k < half.x.size(); ++k) {
    r.x.push_back(half.x[k]);
    r.xc.push_back(1 - half.x[k]);
    r.w.push_back(half.w[k]);
  }
  for (std::size_t k = 0; k < half.x.size(); ++k) {
    r.x.push_back(1 - half.x[k]);
    r.xc.push_back(half.x[k]);
    r.w.push_back(half.w[k]);
  }
  return r;
}

const UnitRule& cached_unit_rule() {
  static const UnitRule r = unit_rule();
  return r;
}

double lerch_constant(double alpha, double xi0, double beta) {
  if (xi0 == 0) return -std::log(2 * alpha) - boost::math::digamma(beta + 1) - std::numbers::egamma;
  return eval_L(-std::exp(-2 * xi0), beta, 1e-13).real();
}

}  // namespace

double ChargeProfile::pole() const { return side == PoleSide::right ? alpha : -alpha; }

double ChargeProfile::far_end() const {
  const double c0 = xi0 == 0 ? std::numeric_limits<double>::infinity() : alpha / std::tanh(xi0);
  return side == PoleSide::right ? c0 : -c0;
}

bool ChargeProfile::on_segment(double s) const {
  return side == PoleSide::right ? (s >= alpha && s <= far_end()) : (s <= -alpha && s >= far_end());
}

double ChargeProfile::phi_at(double sigma) const {
  const double den = sigma + 2 * alpha;
  if (sigma == 0) {
    if (beta < 1) return std::numeric_limits<double>::infinity();
    return beta == 1 ? weight * 2 * alpha * std::exp(2 * xi0) / (den * den) : 0.0;
  }
  return weight * 2 * alpha * beta * std::exp(2 * beta * xi0 + (beta - 1) * std::log(sigma / den)) / (den * den);
}

double ChargeProfile::psi_at(double sigma) const {
  if (sigma == 0) return 0;
  return weight * std::exp(2 * beta * xi0 + beta * std::log(sigma / (sigma + 2 * alpha)));
}

double ChargeProfile::phi(double s) const { return on_segment(s) ? phi_at(std::abs(s - pole())) : 0.0; }

double ChargeProfile::psi(double s) const { return on_segment(s) ? psi_at(std::abs(s - pole())) : 0.0; }

ChargeProfile make_profile(PoleSide side, ChargeKind kind, double alpha, double beta, double xi0, double weight) {
  if (!(alpha > 0) || !(beta > 0) || !(xi0 >= 0)) throw DomainError("charge profile needs alpha, beta > 0 and xi0 >= 0");
  ChargeProfile p;
  p.side = side;
  p.kind = kind;
  p.alpha = alpha;
  p.beta = beta;
  p.xi0 = xi0;
  p.weight = weight;
  const double sgn = side == PoleSide::right ? 1.0 : -1.0;
  const UnitRule& u = cached_unit_rule();
  p.nodes.reserve(u.x.size());
  p.weights.reserve(u.x.size());
  if (kind == ChargeKind::monopole) {
    // charge variable v = psi/weight in [0, 1]: int f phi ds = weight int f(s(v)) dv
    for (std::size_t k = 0; k < u.x.size(); ++k) {
      const double lr = -2 * xi0 + std::log1p(-u.xc[k]) / beta;  // log of the ratio rho
      const double s = alpha * (1 + std::exp(lr)) / (-std::expm1(lr));
      p.nodes.push_back(sgn * s);
      p.weights.push_back(weight * u.w[k]);
    }
  } else if (xi0 == 0) {
    // s = pole + sgn alpha u/(1-u)
    for (std::size_t k = 0; k < u.x.size(); ++k) {
      const double t = u.x[k], tc = u.xc[k];
      const double s = p.pole() + sgn * alpha * t / tc;
      p.nodes.push_back(s);
      p.weights.push_back(weight * std::pow(t / (1 + tc), beta) * alpha / (tc * tc) * u.w[k]);
    }
  } else {
    const double len = std::abs(p.far_end() - p.pole());
    for (std::size_t k = 0; k < u.x.size(); ++k) {
      const double s = p.pole() + sgn * len * u.x[k];
      p.nodes.push_back(s);
      p.weights.push_back(p.psi(s) * len * u.w[k]);
    }
  }
  return p;
}

namespace {

void check_off_segment(const ChargeProfile& pr, Point p) {
  if (p.y == 0 && pr.on_segment(p.x)) throw DomainError("point on a charge segment");
}

// value and gradient of the profile's kernel integral
void accumulate(const ChargeProfile& pr, double coef, Point p, FieldSample& out) {
  check_off_segment(pr, p);
  double v = 0, gx = 0, gy = 0;
  const int n = static_cast<int>(pr.nodes.size());
  if (pr.kind == ChargeKind::monopole) {
    for (int k = 0; k < n; ++k) {
      const double dx = p.x - pr.nodes[k], r2 = dx * dx + p.y * p.y;
      v += pr.weights[k] * 0.5 * std::log(r2);
      gx += pr.weights[k] * dx / r2;
      gy += pr.weights[k] * p.y / r2;
    }
  } else {
    for (int k = 0; k < n; ++k) {
      const double dx = p.x - pr.nodes[k], r2 = dx * dx + p.y * p.y, r4 = r2 * r2;
      v += pr.weights[k] * p.y / r2;
      gx += pr.weights[k] * (-2 * p.y * dx) / r4;
      gy += pr.weights[k] * (dx * dx - p.y * p.y) / r4;
    }
  }
  out.value += coef * v;
  out.gradient.x += coef * gx;
  out.gradient.y += coef * gy;
}

}  // namespace

LineChargeRepresentation core_shell_charges(const BipolarFrame& frame, const MaterialContrast& c, double C_x,
                                            double C_y) {
  if (frame.layout() != Layout::core_shell) throw DomainError("core-shell charges need a core-shell frame");
  if (c.regime != Regime::blow_up_possible || !std::isfinite(c.beta))
    throw RegimeError("core-shell line charges need 0 < k_e < min(1, k_i)");
  const double a = frame.alpha(), b = c.beta, xi_i = frame.xi_i();
  const double k = 0.5 * frame.r_star() * frame.r_star();
  const double w1 = c.tau + c.tau_e, w2 = c.tau + c.tau_i;
  LineChargeRepresentation rep;
  if (C_x != 0) {
    rep.terms.push_back({k * C_x, make_profile(PoleSide::left, ChargeKind::monopole, a, b, 0, w1)});
    rep.terms.push_back({-k * C_x, make_profile(PoleSide::right, ChargeKind::monopole, a, b, xi_i, w2)});
    rep.remainder.push_back({-k * C_x * w2, a / std::tanh(xi_i), true, lerch_constant(a, xi_i, b)});
    rep.remainder.push_back({k * C_x * w1, 0, false, lerch_constant(a, 0, b)});
  }
  if (C_y != 0) {
    rep.terms.push_back({k * C_y, make_profile(PoleSide::left, ChargeKind::dipole, a, b, 0, w1)});
    rep.terms.push_back({-k * C_y, make_profile(PoleSide::right, ChargeKind::dipole, a, b, xi_i, w2)});
  }
  return rep;
}

LineChargeRepresentation two_disk_charges(const BipolarFrame& frame, const TwoDiskContrast& c, TwoDiskCase which,
                                          double C_x, double C_y) {
  if (frame.layout() != Layout::two_disks) throw DomainError("two-disk charges need a two-disk frame");
  if (c.regime != Regime::blow_up_possible || !std::isfinite(c.beta))
    throw RegimeError("two-disk line charges need tau in (0, 1)");
  const bool resistive = c.k_1 > 1 && c.k_2 > 1, conductive = c.k_1 < 1 && c.k_2 < 1;
  if ((which == TwoDiskCase::resistive && !resistive) || (which == TwoDiskCase::conductive && !conductive))
    throw RegimeError("conductivities do not match the requested two-disk case");
  const double a = frame.alpha(), b = c.beta, x1 = frame.xi_1(), x2 = frame.xi_2();
  const double k = 0.5 * frame.r_star() * frame.r_star();
  LineChargeRepresentation rep;
  if (which == TwoDiskCase::resistive) {
    if (C_x == 0) return rep;
    const double w1 = c.tau + c.tau_1, w2 = c.tau + c.tau_2;
    rep.terms.push_back({k * C_x, make_profile(PoleSide::left, ChargeKind::monopole, a, b, x1, w1)});
    rep.terms.push_back({-k * C_x, make_profile(PoleSide::right, ChargeKind::monopole, a, b, x2, w2)});
    rep.remainder.push_back({k * C_x * w1, -a / std::tanh(x1), true, lerch_constant(a, x1, b)});
    rep.remainder.push_back({-k * C_x * w2, a / std::tanh(x2), true, lerch_constant(a, x2, b)});
  } else {
    if (C_y == 0) return rep;
    const double w1 = c.tau - c.tau_1, w2 = c.tau - c.tau_2;
    rep.terms.push_back({k * C_y, make_profile(PoleSide::left, ChargeKind::dipole, a, b, x1, w1)});
    rep.terms.push_back({k * C_y, make_profile(PoleSide::right, ChargeKind::dipole, a, b, x2, w2)});
  }
  return rep;
}

double eval_line_potential(const LineChargeRepresentation& rep, Point p) { return eval_line_field(rep, p).value; }

FieldSample eval_line_field(const LineChargeRepresentation& rep, Point p) {
  FieldSample s;
  s.position = p;
  for (const auto& t : rep.terms) accumulate(t.profile, t.coef, p, s);
  return s;
}

FieldSample eval_line_remainder(const LineChargeRepresentation& rep, Point p) {
  FieldSample s;
  s.position = p;
  for (const auto& r : rep.remainder) {
    s.value += r.coef * r.constant;
    if (!r.has_log) continue;
    const double dx = p.x - r.center, r2 = dx * dx + p.y * p.y;
    s.value -= r.coef * 0.5 * std::log(r2);
    s.gradient.x -= r.coef * dx / r2;
    s.gradient.y -= r.coef * p.y / r2;
  }
  return s;
}

cplx lerch_via_charges(const BipolarFrame& frame, double xi0, double beta, Point p, PoleSide side) {
  const double xi = frame.to_bipolar(p).xi;
  if (side == PoleSide::right && !(xi < 2 * xi0)) throw DomainError("right charges need xi < 2 xi0");
  if (side == PoleSide::left && !(xi > -2 * xi0)) throw DomainError("left charges need xi > -2 xi0");
  const double a = frame.alpha();
  FieldSample mono, dip;
  accumulate(make_profile(side, ChargeKind::monopole, a, beta, xi0, 1), 1, p, mono);
  accumulate(make_profile(side, ChargeKind::dipole, a, beta, xi0, 1), 1, p, dip);
  return {mono.value, side == PoleSide::right ? -dip.value : dip.value};
}

double lerch_charge_remainder(const BipolarFrame& frame, double xi0, double beta, Point p, PoleSide side) {
  const double a = frame.alpha();
  const double cst = lerch_constant(a, xi0, beta);
  if (xi0 == 0) return cst;
  const double c0 = (side == PoleSide::right ? 1 : -1) * a / std::tanh(xi0);
  return -std::log(std::hypot(p.x - c0, p.y)) + cst;
}

}  // namespace gapfield
