#include "gapfield/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gapfield/error.hpp"
#include "gapfield/lerch.hpp"

namespace gapfield {

namespace {

constexpr cplx I{0, 1};

// coef * L(exp(a xi + i b theta - shift))
struct LerchTerm {
  double coef;
  int a, b;
  double shift;
};

cplx term_arg(const LerchTerm& t, BipolarPoint p) {
  return std::exp(t.a * p.xi - t.shift) * std::polar(1.0, t.b * p.theta);
}

cplx sum_value(const std::vector<LerchTerm>& ts, BipolarPoint p, double beta, double tol) {
  cplx v = 0;
  for (const auto& t : ts)
    if (t.coef != 0) v += t.coef * eval_L(term_arg(t, p), beta, tol);
  return 0.5 * v;
}

SingularGradient sum_gradient(const BipolarFrame& frame, const std::vector<LerchTerm>& ts, BipolarPoint p,
                              double beta, double tol) {
  SingularGradient g;
  for (const auto& t : ts) {
    if (t.coef == 0) continue;
    const cplx P = eval_P(term_arg(t, p), beta, tol);
    g.dq_dxi += 0.5 * t.coef * (-double(t.a)) * P;
    g.dq_dtheta += 0.5 * t.coef * (-I * double(t.b)) * P;
  }
  const double h = frame.scale_factor(p);
  const auto [ex, et] = frame.basis(p);
  g.grad_re = {h * (g.dq_dxi.real() * ex.x + g.dq_dtheta.real() * et.x),
               h * (g.dq_dxi.real() * ex.y + g.dq_dtheta.real() * et.y)};
  g.grad_im = {h * (g.dq_dxi.imag() * ex.x + g.dq_dtheta.imag() * et.x),
               h * (g.dq_dxi.imag() * ex.y + g.dq_dtheta.imag() * et.y)};
  return g;
}

void require_blow_up(double tau, double beta) {
  if (!(tau > 0) || !(tau < 1) || !std::isfinite(beta))
    throw RegimeError("no singular decomposition in this regime (need 0 < tau < 1)");
}

std::vector<LerchTerm> core_shell_terms(const BipolarFrame& frame, const MaterialContrast& c, Region r) {
  const double ci = -(c.tau + c.tau_i), ce = c.tau + c.tau_e;
  const double xi_i = frame.xi_i(), xi_e = frame.xi_e();
  switch (r) {
    case Region::exterior: return {{ci, 1, -1, 2 * xi_i}, {ce, 1, -1, 2 * xi_e}};
    case Region::shell: return {{ci, 1, -1, 2 * xi_i}, {ce, -1, -1, 0}};
    default: return {{ci, -1, -1, 0}, {ce, -1, -1, 0}};
  }
}

std::vector<LerchTerm> two_disk_terms(const BipolarFrame& frame, double tau, double t1, double t2, Region r) {
  const double c1 = tau + t1, c2 = -(tau + t2);
  const double x1 = frame.xi_1(), x2 = frame.xi_2();
  switch (r) {
    case Region::disk_left: return {{c1, 1, -1, 0}, {c2, 1, 1, 2 * x2}};
    case Region::disk_right: return {{c1, -1, -1, 2 * x1}, {c2, -1, 1, 0}};
    default: return {{c1, -1, -1, 2 * x1}, {c2, 1, 1, 2 * x2}};
  }
}

}  // namespace

cplx singular_q(const BipolarFrame& frame, const MaterialContrast& c, Point p, double tol) {
  require_blow_up(c.tau, c.beta);
  const BipolarPoint b = frame.to_bipolar(p);
  return sum_value(core_shell_terms(frame, c, region_of(frame, b)), b, c.beta, tol);
}

SingularGradient grad_singular_q(const BipolarFrame& frame, const MaterialContrast& c, Point p, double tol) {
  require_blow_up(c.tau, c.beta);
  const BipolarPoint b = frame.to_bipolar(p);
  return sum_gradient(frame, core_shell_terms(frame, c, region_of(frame, b)), b, c.beta, tol);
}

SingularGradient grad_singular_q(const BipolarFrame& frame, const MaterialContrast& c, BipolarPoint b,
                                 Region region, double tol) {
  require_blow_up(c.tau, c.beta);
  return sum_gradient(frame, core_shell_terms(frame, c, region), b, c.beta, tol);
}

Point leading_gradient_shell(const BipolarFrame& frame, const MaterialContrast& c, double C_x, double C_y,
                             Point p) {
  const BipolarPoint b = frame.to_bipolar(p);
  if (!(b.xi > frame.xi_e() && b.xi < frame.xi_i())) throw DomainError("point outside the shell");
  if (C_x == 0 && C_y == 0) return {0, 0};
  require_blow_up(c.tau, c.beta);
  const double K = c.r_star * (c.tau_i + c.tau_e + 2 * c.tau) / (2 * std::sqrt(c.epsilon)) *
                   bipolar_denominator(b.xi, b.theta);
  const cplx P = eval_P(std::exp(-b.xi) * std::polar(1.0, -b.theta), c.beta);
  const double s = K * (C_x * P.real() + C_y * P.imag());
  const Point e = frame.basis(b).first;
  return {s * e.x, s * e.y};
}

Point remainder_field(const TransmissionSeries& series, const HarmonicBackground& H, Point p) {
  const auto [cx, cy] = linear_coefficients(H);
  const FieldSample u = series.evaluate(H, p);
  const Point gH = H.gradient(p);
  const SingularGradient g = grad_singular_q(series.frame(), series.contrast(), p);
  const double r2 = series.frame().r_star() * series.frame().r_star();
  return {u.gradient.x - gH.x - r2 * (cx * g.grad_re.x + cy * g.grad_im.x),
          u.gradient.y - gH.y - r2 * (cx * g.grad_re.y + cy * g.grad_im.y)};
}

cplx two_disk_singular_q(const BipolarFrame& frame, const TwoDiskContrast& c, double t1, double t2, Point p,
                         double tol) {
  require_blow_up(c.tau, c.beta);
  const BipolarPoint b = frame.to_bipolar(p);
  return sum_value(two_disk_terms(frame, c.tau, t1, t2, region_of(frame, b)), b, c.beta, tol);
}

SingularGradient grad_two_disk_singular_q(const BipolarFrame& frame, const TwoDiskContrast& c, double t1,
                                          double t2, Point p, double tol) {
  require_blow_up(c.tau, c.beta);
  const BipolarPoint b = frame.to_bipolar(p);
  return sum_gradient(frame, two_disk_terms(frame, c.tau, t1, t2, region_of(frame, b)), b, c.beta, tol);
}

FieldSample two_disk_singular_field(const BipolarFrame& frame, const TwoDiskContrast& c,
                                    const HarmonicBackground& H, Point p) {
  const auto [cx, cy] = linear_coefficients(H);
  const double r2 = frame.r_star() * frame.r_star();
  FieldSample s;
  s.position = p;
  s.bipolar = frame.to_bipolar(p);
  s.region = region_of(frame, s.bipolar);
  s.value = H.value(p);
  s.gradient = H.gradient(p);
  if (cx != 0) {
    s.value += cx * r2 * two_disk_singular_q(frame, c, c.tau_1, c.tau_2, p).real();
    const Point g = grad_two_disk_singular_q(frame, c, c.tau_1, c.tau_2, p).grad_re;
    s.gradient.x += cx * r2 * g.x;
    s.gradient.y += cx * r2 * g.y;
  }
  if (cy != 0) {
    s.value += cy * r2 * two_disk_singular_q(frame, c, -c.tau_1, -c.tau_2, p).imag();
    const Point g = grad_two_disk_singular_q(frame, c, -c.tau_1, -c.tau_2, p).grad_im;
    s.gradient.x += cy * r2 * g.x;
    s.gradient.y += cy * r2 * g.y;
  }
  return s;
}

FieldSample beta_zero_singular(const BipolarFrame& frame, double C_x, double C_y, Point p) {
  if (frame.layout() != Layout::core_shell) throw DomainError("beta = 0 form needs a core-shell frame");
  const double a = frame.alpha();
  const double ci = frame.circles()[0].circle.center.x;
  if (p.y == 0 && ((p.x >= a && p.x <= ci) || p.x <= -a)) throw DomainError("point on a charge segment");
  const double r2 = frame.r_star() * frame.r_star();

  // atan((b - x)/y) and its gradient
  const auto edge = [&](double e, double& v, Point& g) {
    const double dx = e - p.x, d2 = dx * dx + p.y * p.y;
    v = std::atan(dx / p.y);
    g = {-p.y / d2, -dx / d2};
  };
  FieldSample s;
  s.position = p;
  s.bipolar = frame.to_bipolar(p);
  s.region = region_of(frame, s.bipolar);

  const double dl2 = (p.x + a) * (p.x + a) + p.y * p.y, dr2 = (p.x - a) * (p.x - a) + p.y * p.y;
  s.value = C_x * r2 * 0.5 * std::log(dl2 / dr2);
  s.gradient = {C_x * r2 * ((p.x + a) / dl2 - (p.x - a) / dr2), C_x * r2 * (p.y / dl2 - p.y / dr2)};

  if (C_y != 0) {
    double v1, v2, v3;
    Point g1, g2, g3;
    edge(-a, v1, g1);  // left line (-inf, -a]
    edge(ci, v2, g2);  // right line [a, c_i]
    edge(a, v3, g3);
    const double left = v1 + 0.5 * std::numbers::pi * std::copysign(1.0, p.y);
    const double right = v2 - v3;
    s.value += C_y * r2 * (left - right);
    s.gradient.x += C_y * r2 * (g1.x - (g2.x - g3.x));
    s.gradient.y += C_y * r2 * (g1.y - (g2.y - g3.y));
  }
  return s;
}

}  // namespace gapfield
