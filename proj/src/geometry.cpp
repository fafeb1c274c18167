#include "gapfield/geometry.hpp"

#include <cmath>
#include <numbers>

#include "gapfield/error.hpp"

namespace gapfield {

void CoreShellConfig::validate() const {
  if (!(r_i > 0) || !(r_e > r_i)) throw ConfigError("core-shell radii must satisfy r_e > r_i > 0");
  if (!(epsilon > 0) || !(epsilon < r_e - r_i))
    throw ConfigError("gap must satisfy 0 < epsilon < r_e - r_i");
  if (!(k_i > 0) || !(k_e > 0)) throw ConfigError("conductivities must be positive");
  if (k_e == 1) throw ConfigError("shell conductivity k_e = 1 is not admissible");
}

void TwoDiskConfig::validate() const {
  if (!(r_1 > 0) || !(r_2 > 0) || !(epsilon > 0))
    throw ConfigError("radii and gap must be positive");
  if (!(k_1 > 0) || !(k_2 > 0)) throw ConfigError("conductivities must be positive");
  if (k_1 == 1 || k_2 == 1) throw ConfigError("disk conductivity 1 is not admissible");
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

double bipolar_denominator(double xi, double theta) {
  double s = std::sinh(0.5 * xi), c = std::cos(0.5 * theta);
  return 2 * (s * s + c * c);
}

BipolarFrame BipolarFrame::core_shell(const CoreShellConfig& cfg) {
  cfg.validate();
  const double ri = cfg.r_i, re = cfg.r_e, eps = cfg.epsilon;
  const double d = re - ri - eps;
  BipolarFrame f;
  f.layout_ = Layout::core_shell;
  f.epsilon_ = eps;
  f.alpha_ = std::sqrt(eps * (2 * ri + eps) * (2 * re - eps) * (2 * re - 2 * ri - eps)) / (2 * d);
  f.r_star_ = std::sqrt(2 * ri * re / (re - ri));
  const double ci = (re * re - ri * ri - d * d) / (2 * d);
  const double ce = ci + d;
  f.circles_ = {{std::asinh(f.alpha_ / ri), {{ci, 0}, ri}},
                {std::asinh(f.alpha_ / re), {{ce, 0}, re}}};
  return f;
}

BipolarFrame BipolarFrame::two_disks(const TwoDiskConfig& cfg) {
  cfg.validate();
  const double r1 = cfg.r_1, r2 = cfg.r_2, eps = cfg.epsilon;
  BipolarFrame f;
  f.layout_ = Layout::two_disks;
  f.epsilon_ = eps;
  f.alpha_ = std::sqrt(eps * (2 * r1 + eps) * (2 * r2 + eps) * (2 * r1 + 2 * r2 + eps)) /
             (2 * (r1 + r2 + eps));
  f.r_star_ = std::sqrt(2 * r1 * r2 / (r1 + r2));
  const double a = f.alpha_;
  f.circles_ = {{-std::asinh(a / r1), {{-std::sqrt(a * a + r1 * r1), 0}, r1}},
                {std::asinh(a / r2), {{std::sqrt(a * a + r2 * r2), 0}, r2}}};
  return f;
}

double BipolarFrame::xi_i() const {
  if (layout_ != Layout::core_shell) throw DomainError("xi_i requires a core-shell frame");
  return circles_[0].xi;
}
double BipolarFrame::xi_e() const {
  if (layout_ != Layout::core_shell) throw DomainError("xi_e requires a core-shell frame");
  return circles_[1].xi;
}
double BipolarFrame::xi_1() const {
  if (layout_ != Layout::two_disks) throw DomainError("xi_1 requires a two-disk frame");
  return -circles_[0].xi;
}
double BipolarFrame::xi_2() const {
  if (layout_ != Layout::two_disks) throw DomainError("xi_2 requires a two-disk frame");
  return circles_[1].xi;
}

std::pair<Point, Point> BipolarFrame::closest_points() const {
  const Circle& a = circles_[0].circle;
  const Circle& b = circles_[1].circle;
  if (layout_ == Layout::core_shell)
    return {{a.center.x - a.radius, 0}, {b.center.x - b.radius, 0}};
  return {{a.center.x + a.radius, 0}, {b.center.x - b.radius, 0}};
}

BipolarPoint BipolarFrame::to_bipolar(Point p) const {
  const double a = alpha_;
  const double dm = (a - p.x) * (a - p.x) + p.y * p.y;
  const double dp = (a + p.x) * (a + p.x) + p.y * p.y;
  const double guard = 1e-14 * a;
  if (dm < guard * guard || dp < guard * guard) throw DomainError("coordinate singularity");
  BipolarPoint b;
  b.xi = p.x >= 0 ? 0.5 * std::log1p(4 * a * p.x / dm) : -0.5 * std::log1p(-4 * a * p.x / dp);
  b.theta = std::atan2(2 * a * p.y, a * a - p.x * p.x - p.y * p.y);
  if (b.theta <= -std::numbers::pi) b.theta = std::numbers::pi;
  return b;
}

Point BipolarFrame::to_cartesian(BipolarPoint b) const {
  const double d = bipolar_denominator(b.xi, b.theta);
  if (d < 1e-30) throw DomainError("point at infinity");
  return {alpha_ * std::sinh(b.xi) / d, alpha_ * std::sin(b.theta) / d};
}

double BipolarFrame::scale_factor(BipolarPoint b) const {
  const double d = bipolar_denominator(b.xi, b.theta);
  if (d == 0) throw DomainError("point at infinity");
  return d / alpha_;
}

std::pair<Point, Point> BipolarFrame::basis(BipolarPoint b) const {
  if (bipolar_denominator(b.xi, b.theta) == 0) throw DomainError("point at infinity");
  double ex = 1 + std::cos(b.theta) * std::cosh(b.xi);
  double ey = -std::sin(b.theta) * std::sinh(b.xi);
  const double n = std::hypot(ex, ey);
  ex /= n;
  ey /= n;
  return {{ex, ey}, {-ey, ex}};
}

Circle BipolarFrame::circle_of_level(double xi0) const {
  if (xi0 == 0) throw DomainError("level is the y-axis");
  return {{alpha_ / std::tanh(xi0), 0}, alpha_ / std::abs(std::sinh(xi0))};
}

double BipolarFrame::reflected_level(int k, Interface which) const {
  if (k < 0) throw DomainError("reflection index must be non-negative");
  const double gap = xi_i() - xi_e();
  return 2.0 * k * gap + (which == Interface::inner ? xi_i() : xi_e());
}

cplx BipolarFrame::dw_dz(Point p) const {
  const cplx z = to_complex(p);
  return 2 * alpha_ / (alpha_ * alpha_ - z * z);
}

Point reflect_point(const Circle& c, Point p) {
  const double dx = p.x - c.center.x, dy = p.y - c.center.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0) throw DomainError("reflection undefined at center");
  const double s = c.radius * c.radius / d2;
  return {c.center.x + s * dx, c.center.y + s * dy};
}

}  // namespace gapfield
