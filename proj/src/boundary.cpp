#include "gapfield/boundary.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gapfield/error.hpp"

namespace gapfield {

Region region_of(const BipolarFrame& frame, BipolarPoint b) {
  if (frame.layout() == Layout::core_shell) {
    if (b.xi >= frame.xi_i()) return Region::core;
    if (b.xi >= frame.xi_e()) return Region::shell;
    return Region::exterior;
  }
  if (b.xi >= frame.xi_2()) return Region::disk_right;
  if (b.xi < -frame.xi_1()) return Region::disk_left;
  return Region::exterior;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::core: return "core";
    case Region::shell: return "shell";
    case Region::exterior: return "exterior";
    case Region::disk_left: return "disk_left";
    case Region::disk_right: return "disk_right";
  }
  return "?";
}

double DiscretizedBoundary::param_step() const { return 2 * std::numbers::pi / size(); }

double DiscretizedBoundary::signed_distance(Point p) const {
  return distance(p, circle.center) - circle.radius;
}

double DiscretizedBoundary::local_spacing(Point p) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int j = 0; j < size(); ++j) {
    const double d = distance(p, nodes[j]);
    if (d < bd) bd = d, best = j;
  }
  return weights[best];
}

DiscretizedBoundary discretize_polar(const Circle& c, int M) {
  if (M < 4 || M % 2) throw DomainError("node count must be even and >= 4");
  DiscretizedBoundary b;
  b.circle = c;
  b.kind = Parametrization::polar;
  const double dt = 2 * std::numbers::pi / M;
  for (int j = 0; j < M; ++j) {
    const double t = j * dt;
    const Point n{std::cos(t), std::sin(t)};
    b.param.push_back(t);
    b.normals.push_back(n);
    b.nodes.push_back({c.center.x + c.radius * n.x, c.center.y + c.radius * n.y});
    b.weights.push_back(c.radius * dt);
  }
  return b;
}

DiscretizedBoundary discretize_level(const BipolarFrame& frame, double xi0, int M) {
  if (M < 4 || M % 2) throw DomainError("node count must be even and >= 4");
  DiscretizedBoundary b;
  b.kind = Parametrization::bipolar;
  b.xi0 = xi0;
  b.circle = frame.circle_of_level(xi0);
  for (const auto& lc : frame.circles())
    if (lc.xi == xi0) b.circle = lc.circle;
  const double dt = 2 * std::numbers::pi / M;
  for (int j = 0; j < M; ++j) {
    const double t = -std::numbers::pi + j * dt;
    const Point z = frame.to_cartesian({xi0, t});
    double nx = z.x - b.circle.center.x, ny = z.y - b.circle.center.y;
    const double r = std::hypot(nx, ny);
    nx /= r;
    ny /= r;
    b.param.push_back(t);
    b.normals.push_back({nx, ny});
    b.nodes.push_back({b.circle.center.x + b.circle.radius * nx, b.circle.center.y + b.circle.radius * ny});
    b.weights.push_back(dt / frame.scale_factor({xi0, t}));
  }
  return b;
}

Region region_by_containment(const BoundaryDensities& d, Point p) {
  const auto inside = [&](int j) { return d.boundaries[j].signed_distance(p) < 0; };
  if (d.layout == Layout::core_shell) {
    if (inside(0)) return Region::core;
    if (d.boundaries.size() > 1 && inside(1)) return Region::shell;
    return Region::exterior;
  }
  if (inside(0)) return Region::disk_left;
  if (d.boundaries.size() > 1 && inside(1)) return Region::disk_right;
  return Region::exterior;
}

FieldSample eval_layers(const BoundaryDensities& d, const HarmonicBackground& H, Point p,
                        double guard_factor) {
  FieldSample s;
  s.position = p;
  s.value = H.value(p);
  s.gradient = H.gradient(p);
  for (std::size_t c = 0; c < d.boundaries.size(); ++c) {
    const auto& b = d.boundaries[c];
    const auto& phi = d.phi[c];
    const double gap = std::abs(b.signed_distance(p));
    const double h = b.local_spacing(p);
    if (gap < guard_factor * h) {
      std::ostringstream msg;
      msg << "point within " << guard_factor << " node spacings of a circle; refine to M >= "
          << static_cast<int>(std::ceil(b.size() * guard_factor * h / std::max(gap, 1e-300)));
      throw DomainError(msg.str());
    }
    double v = 0, gx = 0, gy = 0;
    for (int j = 0; j < b.size(); ++j) {
      const double dx = p.x - b.nodes[j].x, dy = p.y - b.nodes[j].y;
      const double r2 = dx * dx + dy * dy;
      const double w = phi[j] * b.weights[j];
      v += 0.5 * std::log(r2) * w;
      gx += dx / r2 * w;
      gy += dy / r2 * w;
    }
    const double k = 1 / (2 * std::numbers::pi);
    s.value += k * v;
    s.gradient.x += k * gx;
    s.gradient.y += k * gy;
  }
  s.region = region_by_containment(d, p);
  return s;
}

std::vector<double> normal_derivative(const DiscretizedBoundary& b, const HarmonicBackground& H) {
  std::vector<double> g(b.size());
  for (int j = 0; j < b.size(); ++j) g[j] = dot(H.gradient(b.nodes[j]), b.normals[j]);
  return g;
}

double weighted_mean(const DiscretizedBoundary& b, const std::vector<double>& phi) {
  double s = 0, w = 0;
  for (int j = 0; j < b.size(); ++j) s += phi[j] * b.weights[j], w += b.weights[j];
  return s / w;
}

}  // namespace gapfield
