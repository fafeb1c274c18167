#include "gapfield/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gapfield/error.hpp"

namespace gapfield {

namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;
constexpr double kGuard = 5.0;

double lambda_of(double k_in, double k_out) {
  if (k_in == k_out) return std::numeric_limits<double>::infinity();
  return (k_in + k_out) / (2 * (k_in - k_out));
}

// (1/2pi) <x - y, nu> / |x - y|^2
double dlp_kernel(Point x, Point nu, Point y) {
  const double dx = x.x - y.x, dy = x.y - y.y;
  return kInvTwoPi * (dx * nu.x + dy * nu.y) / (dx * dx + dy * dy);
}

// Kress weights for int ln(4 sin^2((t - s)/2)) g(s) ds, indexed by node offset.
std::vector<double> kress_weights(int M) {
  const int n = M / 2;
  const double dt = 2 * std::numbers::pi / M;
  std::vector<double> R(M);
  for (int d = 0; d < M; ++d) {
    double s = 0;
    for (int m = 1; m < n; ++m) s += std::cos(m * d * dt) / m;
    R[d] = -4 * std::numbers::pi / M * s - 4 * std::numbers::pi / (double(M) * M) * std::cos(n * d * dt);
  }
  return R;
}

}  // namespace

int auto_node_count(const BipolarFrame& frame, double C_gap) {
  double r = 0;
  for (const auto& c : frame.circles()) r = std::max(r, c.circle.radius);
  int M = std::max(256, static_cast<int>(std::ceil(C_gap * std::sqrt(r / frame.epsilon()))));
  return M + (M % 2);
}

DenseSystem assemble_system(const std::vector<DiscretizedBoundary>& boundaries, Layout layout,
                            const HarmonicBackground& H) {
  DenseSystem sys;
  sys.geometry.layout = layout;
  sys.geometry.boundaries = boundaries;
  int n = 0;
  for (const auto& b : boundaries) {
    sys.offset.push_back(n);
    sys.lambda.push_back(lambda_of(b.k_in, b.k_out));
    n += b.size();
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i)
    for (std::size_t j = i + 1; j < boundaries.size(); ++j) {
      const auto& a = boundaries[i].circle;
      const auto& b = boundaries[j].circle;
      const double d = distance(a.center, b.center);
      if (std::abs(d - std::abs(a.radius - b.radius)) < 1e-15 * (a.radius + b.radius) ||
          std::abs(d - (a.radius + b.radius)) < 1e-15 * (a.radius + b.radius))
        throw DomainError("circles touch");
    }

  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < boundaries.size(); ++j) {
    const auto& bj = boundaries[j];
    const int oj = sys.offset[j];
    const bool decoupled = std::isinf(sys.lambda[j]);
    const std::vector<double> g = normal_derivative(bj, H);
    for (int a = 0; a < bj.size(); ++a) {
      const int row = oj + a;
      if (decoupled) {
        sys.matrix(row, row) = 1;
        continue;
      }
      sys.matrix(row, row) = sys.lambda[j];
      sys.rhs(row) = g[a];
      for (std::size_t l = 0; l < boundaries.size(); ++l) {
        if (l == j) continue;
        const auto& bl = boundaries[l];
        for (int b = 0; b < bl.size(); ++b)
          sys.matrix(row, sys.offset[l] + b) = -dlp_kernel(bj.nodes[a], bj.normals[a], bl.nodes[b]) * bl.weights[b];
      }
    }
  }
  return sys;
}

DenseSystem assemble_core_shell(const BipolarFrame& frame, const MaterialContrast& c, const HarmonicBackground& H,
                                int M) {
  if (frame.layout() != Layout::core_shell) throw DomainError("core-shell assembly needs a core-shell frame");
  if (M == 0) M = auto_node_count(frame);
  DiscretizedBoundary bi = discretize_level(frame, frame.xi_i(), M);
  DiscretizedBoundary be = discretize_level(frame, frame.xi_e(), M);
  bi.k_in = c.k_i;
  bi.k_out = be.k_in = c.k_e;
  be.k_out = 1;
  return assemble_system({bi, be}, Layout::core_shell, H);
}

DenseSystem assemble_two_disk(const BipolarFrame& frame, const TwoDiskContrast& c, const HarmonicBackground& H,
                              int M) {
  if (frame.layout() != Layout::two_disks) throw DomainError("two-disk assembly needs a two-disk frame");
  if (M == 0) M = auto_node_count(frame);
  DiscretizedBoundary b1 = discretize_level(frame, -frame.xi_1(), M);
  DiscretizedBoundary b2 = discretize_level(frame, frame.xi_2(), M);
  b1.k_in = c.k_1;
  b2.k_in = c.k_2;
  return assemble_system({b1, b2}, Layout::two_disks, H);
}

BoundaryDensities solve_densities(const DenseSystem& system) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.matrix);
  if (!(lu.rcond() > 1e-14)) throw DomainError("Nystrom matrix is numerically singular");
  const Eigen::VectorXd x = lu.solve(system.rhs);
  BoundaryDensities d = system.geometry;
  d.phi.resize(d.boundaries.size());
  for (std::size_t j = 0; j < d.boundaries.size(); ++j) {
    const int m = d.boundaries[j].size();
    d.phi[j].assign(x.data() + system.offset[j], x.data() + system.offset[j] + m);
    const double mu = weighted_mean(d.boundaries[j], d.phi[j]);
    for (double& v : d.phi[j]) v -= mu;
  }
  return d;
}

FieldSample eval_oracle(const BoundaryDensities& d, const HarmonicBackground& H, Point p) {
  return eval_layers(d, H, p, kGuard);
}

std::vector<double> boundary_normal_derivative(const BoundaryDensities& d, const HarmonicBackground& H, int j,
                                               int side) {
  const auto& bj = d.boundaries[j];
  std::vector<double> out = normal_derivative(bj, H);
  double total = 0;
  for (int b = 0; b < bj.size(); ++b) total += d.phi[j][b] * bj.weights[b];
  const double kstar = total / (4 * std::numbers::pi * bj.circle.radius);
  for (int a = 0; a < bj.size(); ++a) {
    double v = 0.5 * side * d.phi[j][a] + kstar;
    for (std::size_t l = 0; l < d.boundaries.size(); ++l) {
      if (static_cast<int>(l) == j) continue;
      const auto& bl = d.boundaries[l];
      for (int b = 0; b < bl.size(); ++b)
        v += dlp_kernel(bj.nodes[a], bj.normals[a], bl.nodes[b]) * bl.weights[b] * d.phi[l][b];
    }
    out[a] += v;
  }
  return out;
}

std::vector<double> boundary_potential(const BoundaryDensities& d, const HarmonicBackground& H, int j) {
  const auto& bj = d.boundaries[j];
  const int M = bj.size();
  const double dt = 2 * std::numbers::pi / M;
  const std::vector<double> R = kress_weights(M);
  std::vector<double> g(M), speed(M);
  for (int k = 0; k < M; ++k) {
    speed[k] = bj.weights[k] / dt;
    g[k] = d.phi[j][k] * speed[k];
  }
  std::vector<double> out(M);
  for (int a = 0; a < M; ++a) {
    double v = H.value(bj.nodes[a]);
    for (std::size_t l = 0; l < d.boundaries.size(); ++l) {
      if (static_cast<int>(l) == j) continue;
      const auto& bl = d.boundaries[l];
      double s = 0;
      for (int b = 0; b < bl.size(); ++b)
        s += std::log(distance(bj.nodes[a], bl.nodes[b])) * bl.weights[b] * d.phi[l][b];
      v += kInvTwoPi * s;
    }
    double sing = 0, smooth = 0;
    for (int k = 0; k < M; ++k) {
      sing += R[(a - k + M) % M] * g[k];
      double lk;
      if (k == a) {
        lk = 2 * std::log(speed[a]);
      } else {
        const double sn = std::sin(0.5 * (bj.param[a] - bj.param[k]));
        const double dx = bj.nodes[a].x - bj.nodes[k].x, dy = bj.nodes[a].y - bj.nodes[k].y;
        lk = std::log((dx * dx + dy * dy) / (4 * sn * sn));
      }
      smooth += dt * lk * g[k];
    }
    out[a] = v + kInvTwoPi * 0.5 * (sing + smooth);
  }
  return out;
}

std::vector<double> boundary_tangential_derivative(const BoundaryDensities& d, const HarmonicBackground& H, int j) {
  const auto& bj = d.boundaries[j];
  const int M = bj.size();
  const double dt = 2 * std::numbers::pi / M;
  const std::vector<double> u = boundary_potential(d, H, j);
  std::vector<double> out(M);
  for (int a = 0; a < M; ++a) {
    double du = 0;
    for (int k = 0; k < M; ++k) {
      if (k == a) continue;
      const double sgn = ((a - k) % 2 == 0) ? 1.0 : -1.0;
      du += 0.5 * sgn / std::tan(0.5 * (a - k) * dt) * u[k];
    }
    const Point& nu = bj.normals[a];
    const Point& prev = bj.nodes[(a + M - 1) % M];
    const Point& next = bj.nodes[(a + 1) % M];
    const double orient = (-nu.y * (next.x - prev.x) + nu.x * (next.y - prev.y)) > 0 ? 1.0 : -1.0;
    out[a] = orient * du / (bj.weights[a] / dt);
  }
  return out;
}

double disk_layer_identity_check(const Circle& circle, const TestHarmonic& v, HarmonicSide side, Point p, int M) {
  const DiscretizedBoundary b = discretize_polar(circle, M);
  double s = 0;
  for (int k = 0; k < b.size(); ++k)
    s += std::log(distance(p, b.nodes[k])) * dot(v.gradient(b.nodes[k]), b.normals[k]) * b.weights[k];
  s *= kInvTwoPi;
  const bool inside = distance(p, circle.center) < circle.radius;
  double expected;
  if (side == HarmonicSide::interior) {
    const double vc = v.value(circle.center);
    expected = inside ? -0.5 * v.value(p) + 0.5 * vc : -0.5 * v.value(reflect_point(circle, p)) + 0.5 * vc;
  } else {
    expected = inside ? 0.5 * v.value(reflect_point(circle, p)) : 0.5 * v.value(p);
  }
  return s - expected;
}

}  // namespace gapfield
