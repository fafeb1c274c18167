#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gapfield/contrast.hpp"
#include "gapfield/error.hpp"
#include "gapfield/oracle.hpp"
#include "gapfield/series.hpp"
#include "support.hpp"

using namespace gapfield;
using testing::uniform;

namespace {
const double pi = std::numbers::pi;

struct Setup {
  CoreShellConfig cfg;
  BipolarFrame frame;
  MaterialContrast contrast;
  explicit Setup(CoreShellConfig c)
      : cfg(c), frame(BipolarFrame::core_shell(c)), contrast(contrast_from_conductivities(c, frame)) {}
};

double sup(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

TEST_CASE("single-layer identities on a disk") {
  const Circle c{{0.7, -0.4}, 1.3};
  const auto zc = [&](Point p) { return cplx(p.x - c.center.x, p.y - c.center.y); };
  // harmonic inside: Re z^2 + Im z^3 around an off-center origin
  const TestHarmonic vin{[](Point p) {
                           const cplx z(p.x - 0.2, p.y + 0.1);
                           return (z * z).real() + (z * z * z).imag();
                         },
                         [](Point p) {
                           const cplx z(p.x - 0.2, p.y + 0.1);
                           const cplx d = 2.0 * z + cplx(0, -1) * 3.0 * z * z;
                           return Point{d.real(), -d.imag()};
                         }};
  // harmonic outside and vanishing at infinity
  const TestHarmonic vout{[&](Point p) {
                            const cplx z = zc(p) - cplx(0.3, 0.2);
                            return (1.0 / z).real() + (1.0 / (z * z)).imag();
                          },
                          [&](Point p) {
                            const cplx z = zc(p) - cplx(0.3, 0.2);
                            const cplx d = -1.0 / (z * z) + cplx(0, -1) * (-2.0) / (z * z * z);
                            return Point{d.real(), -d.imag()};
                          }};
  for (int k = 0; k < 40; ++k) {
    const double ang = uniform(-pi, pi);
    const double rin = uniform(0, 0.8) * c.radius, rout = uniform(1.25, 3) * c.radius;
    const Point pin{c.center.x + rin * std::cos(ang), c.center.y + rin * std::sin(ang)};
    const Point pout{c.center.x + rout * std::cos(ang), c.center.y + rout * std::sin(ang)};
    REQUIRE(std::abs(disk_layer_identity_check(c, vin, HarmonicSide::interior, pin)) < 1e-10);
    REQUIRE(std::abs(disk_layer_identity_check(c, vin, HarmonicSide::interior, pout)) < 1e-10);
    REQUIRE(std::abs(disk_layer_identity_check(c, vout, HarmonicSide::exterior, pin)) < 1e-10);
    REQUIRE(std::abs(disk_layer_identity_check(c, vout, HarmonicSide::exterior, pout)) < 1e-10);
  }
}

TEST_CASE("node count scales with the gap") {
  CHECK(auto_node_count(BipolarFrame::core_shell({1, 2, 0.1, 1, 0.01})) == 256);
  const int m = auto_node_count(BipolarFrame::core_shell({1, 2, 1e-4, 1, 0.01}));
  CHECK(m == 4526);
  CHECK(m % 2 == 0);
}

TEST_CASE("system structure") {
  const Setup s({1, 2, 0.1, 1, 0.01});
  const DenseSystem sys = assemble_core_shell(s.frame, s.contrast, HarmonicBackground::linear(1, 0), 128);
  CHECK(sys.matrix.rows() == 256);
  for (int a = 0; a < 128; ++a) {
    REQUIRE(sys.matrix(a, a) == s.contrast.lambda_i);
    REQUIRE(sys.matrix(128 + a, 128 + a) == s.contrast.lambda_e);
    for (int b = 0; b < 128; ++b)
      if (b != a) {
        REQUIRE(sys.matrix(a, b) == 0);
        REQUIRE(sys.matrix(128 + a, 128 + b) == 0);
      }
  }
  // kernel rows against dS[1]/dnu in closed form: S_i[1] = r_i ln|x - c_i| outside B_i
  const auto& bi = sys.geometry.boundaries[0];
  const auto& be = sys.geometry.boundaries[1];
  for (int a = 0; a < 128; ++a) {
    double row = 0;
    for (int b = 0; b < 128; ++b) row -= sys.matrix(128 + a, b);
    const Point d{be.nodes[a].x - bi.circle.center.x, be.nodes[a].y - bi.circle.center.y};
    const double exact = bi.circle.radius * dot(d, be.normals[a]) / dot(d, d);
    REQUIRE(std::abs(row - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
  }
  // S_e[1] is constant inside B_e, so its normal derivative on the core vanishes
  for (int a = 0; a < 128; ++a) {
    double row = 0;
    for (int b = 0; b < 128; ++b) row += sys.matrix(a, 128 + b);
    REQUIRE(std::abs(row) < 1e-9);
  }
}

TEST_CASE("touching circles and near-boundary points are rejected") {
  const Circle a{{0, 0}, 1}, b{{2, 0}, 1};
  std::vector<DiscretizedBoundary> bs{discretize_polar(a, 16), discretize_polar(b, 16)};
  CHECK_THROWS_AS(assemble_system(bs, Layout::two_disks, HarmonicBackground::linear(1, 0)), DomainError);
  const Setup s({1, 2, 0.1, 1, 0.01});
  const auto d = solve_densities(assemble_core_shell(s.frame, s.contrast, HarmonicBackground::linear(1, 0), 128));
  const Circle ce = d.boundaries[1].circle;
  CHECK_THROWS_AS(eval_oracle(d, HarmonicBackground::linear(1, 0), {ce.center.x + ce.radius + 1e-6, 0}),
                  DomainError);
}

TEST_CASE("oracle agrees with the series") {
  for (double eps : {0.1, 0.01}) {
    const Setup s({1, 2, eps, 1, 0.01});
    const HarmonicBackground H = HarmonicBackground::linear(0.8, 0.6);
    const BoundaryDensities d = solve_densities(assemble_core_shell(s.frame, s.contrast, H));
    const TransmissionSeries ts(s.frame, s.contrast);
    int tested = 0;
    for (int k = 0; k < 400 && tested < 40; ++k) {
      const Point p{uniform(-3, 3), uniform(-3, 3)};
      FieldSample a;
      try {
        a = eval_oracle(d, H, p);
      } catch (const DomainError&) {
        continue;
      }
      ++tested;
      const FieldSample r = ts.evaluate(H, p);
      const double g = std::max(1.0, std::hypot(r.gradient.x, r.gradient.y));
      REQUIRE(std::abs(a.value - r.value) < 1e-7 * std::max(1.0, std::abs(r.value)));
      REQUIRE(std::abs(a.gradient.x - r.gradient.x) < 1e-7 * g);
      REQUIRE(std::abs(a.gradient.y - r.gradient.y) < 1e-7 * g);
      REQUIRE(a.region == r.region);
    }
    CHECK(tested >= 20);
  }
}

TEST_CASE("densities of the oracle match the reflection series") {
  const Setup s({1, 2, 0.1, 1, 0.01});
  const HarmonicBackground H = HarmonicBackground::linear(1, 0);
  const int M = 256;
  const BoundaryDensities a = solve_densities(assemble_core_shell(s.frame, s.contrast, H, M));
  const BoundaryDensities b = reflection_densities(s.frame, s.contrast, H, M);
  for (int c = 0; c < 2; ++c) {
    double num = 0, den = 0;
    for (int j = 0; j < M; ++j) {
      num += std::pow(a.phi[c][j] - b.phi[c][j], 2) * a.boundaries[c].weights[j];
      den += std::pow(b.phi[c][j], 2) * a.boundaries[c].weights[j];
    }
    CHECK(std::sqrt(num / den) <= 1e-6);
  }
}

TEST_CASE("normal derivatives at the nodes") {
  const Setup s({1, 2, 0.1, 1, 0.01});
  const HarmonicBackground H = HarmonicBackground::linear(1, 0.5);
  const BoundaryDensities d = solve_densities(assemble_core_shell(s.frame, s.contrast, H));
  const TransmissionSeries ts(s.frame, s.contrast);
  const double lam[2] = {s.contrast.lambda_i, s.contrast.lambda_e};
  const Region in[2] = {Region::core, Region::shell}, out[2] = {Region::shell, Region::exterior};
  for (int j = 0; j < 2; ++j) {
    const auto plus = boundary_normal_derivative(d, H, j, +1);
    const auto minus = boundary_normal_derivative(d, H, j, -1);
    const double m = sup(d.phi[j]);
    double gmax = 0;
    for (int a = 0; a < d.boundaries[j].size(); ++a) {
      REQUIRE(std::abs(plus[a] - (lam[j] + 0.5) * d.phi[j][a]) <= 1e-8 * m);
      REQUIRE(std::abs(minus[a] - (lam[j] - 0.5) * d.phi[j][a]) <= 1e-8 * m);
      gmax = std::max({gmax, std::abs(plus[a]), std::abs(minus[a])});
    }
    CHECK(sup(plus) == doctest::Approx(std::abs(lam[j] + 0.5) * m).epsilon(1e-8));
    CHECK(sup(minus) == doctest::Approx(std::abs(lam[j] - 0.5) * m).epsilon(1e-8));
    // against the series flux
    for (int a = 0; a < d.boundaries[j].size(); a += 7) {
      const BipolarPoint b{d.boundaries[j].xi0, d.boundaries[j].param[a]};
      const Point nu = d.boundaries[j].normals[a];
      REQUIRE(std::abs(dot(ts.evaluate_branch(H, b, out[j]).gradient, nu) - plus[a]) < 1e-7 * gmax);
      REQUIRE(std::abs(dot(ts.evaluate_branch(H, b, in[j]).gradient, nu) - minus[a]) < 1e-7 * gmax);
    }
  }
}

TEST_CASE("potential and tangential derivative on the boundary") {
  const Setup s({1, 2, 0.1, 1, 0.01});
  const HarmonicBackground H = HarmonicBackground::linear(0.3, 1);
  const BoundaryDensities d = solve_densities(assemble_core_shell(s.frame, s.contrast, H));
  const TransmissionSeries ts(s.frame, s.contrast);
  for (int j = 0; j < 2; ++j) {
    const auto u = boundary_potential(d, H, j);
    const auto du = boundary_tangential_derivative(d, H, j);
    double gmax = sup(du);
    for (int a = 0; a < d.boundaries[j].size(); a += 5) {
      const BipolarPoint b{d.boundaries[j].xi0, d.boundaries[j].param[a]};
      const FieldSample r = ts.evaluate_branch(H, b, Region::shell);
      const Point nu = d.boundaries[j].normals[a];
      REQUIRE(std::abs(u[a] - r.value) < 1e-8);
      REQUIRE(std::abs(du[a] - dot(r.gradient, {-nu.y, nu.x})) < 1e-7 * gmax);
    }
  }
}

TEST_CASE("dual problem with reciprocal conductivities") {
  for (const CoreShellConfig& cfg : {CoreShellConfig{1, 2, 0.1, 1, 0.01}, CoreShellConfig{1, 2, 0.05, 3, 0.2}}) {
    const Setup s(cfg);
    const HarmonicBackground H{0, {1, 0.2}, {0.4, -0.3}};
    const HarmonicBackground Ht = H.conjugate();
    const CoreShellConfig dual{cfg.r_i, cfg.r_e, cfg.epsilon, 1 / cfg.k_i, 1 / cfg.k_e};
    const Setup t(dual);
    const BoundaryDensities du = solve_densities(assemble_core_shell(s.frame, s.contrast, H));
    const BoundaryDensities dv = solve_densities(assemble_core_shell(t.frame, t.contrast, Ht));
    const double factor[2] = {1 / cfg.k_e, 1.0};
    for (int j = 0; j < 2; ++j) {
      const auto uT = boundary_tangential_derivative(du, H, j);
      const auto vn = boundary_normal_derivative(dv, Ht, j, +1);
      double res = 0;
      for (std::size_t a = 0; a < uT.size(); ++a) res = std::max(res, std::abs(uT[a] + factor[j] * vn[a]));
      CHECK(res <= 1e-5 * sup(uT));
    }
  }
}

TEST_CASE("two-disk oracle with an invisible disk") {
  // conductivity 1 is rejected by the config, so the boundaries are set up by hand
  const BipolarFrame f = BipolarFrame::two_disks({1.5, 2, 0.05, 2, 6});
  const int M = auto_node_count(f);
  DiscretizedBoundary b1 = discretize_level(f, -f.xi_1(), M), b2 = discretize_level(f, f.xi_2(), M);
  b2.k_in = 6;
  const HarmonicBackground H = HarmonicBackground::linear(1, 0);
  const BoundaryDensities d = solve_densities(assemble_system({b1, b2}, Layout::two_disks, H));
  for (double v : d.phi[0]) REQUIRE(v == 0);
  const Circle c2 = f.circles()[1].circle;
  int tested = 0;
  for (int k = 0; k < 300 && tested < 30; ++k) {
    const Point p{uniform(-4, 5), uniform(-3, 3)};
    FieldSample a;
    try {
      a = eval_oracle(d, H, p);
    } catch (const DomainError&) {
      continue;
    }
    ++tested;
    const auto r = testing::single_disk_x(c2.center.x, c2.radius, 6, p);
    REQUIRE(std::abs(a.value - r.value) < 1e-9);
    REQUIRE(std::abs(a.gradient.x - r.grad.x) < 1e-8);
    REQUIRE(std::abs(a.gradient.y - r.grad.y) < 1e-8);
  }
  CHECK(tested >= 20);
}
