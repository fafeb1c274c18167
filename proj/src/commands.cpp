#include "gapfield/commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "gapfield/asymptotics.hpp"
#include "gapfield/charges.hpp"
#include "gapfield/contrast.hpp"
#include "gapfield/error.hpp"
#include "gapfield/field.hpp"
#include "gapfield/oracle.hpp"
#include "gapfield/parallel.hpp"
#include "gapfield/series.hpp"
#include "gapfield/verify.hpp"

namespace gapfield {

namespace {

const double pi = std::numbers::pi;
const double nan = std::numeric_limits<double>::quiet_NaN();

double norm(Point p) { return std::hypot(p.x, p.y); }

// Frame and contrast scalars shared by every command.
struct Problem {
  Layout layout;
  BipolarFrame frame;
  std::optional<MaterialContrast> core_shell;
  std::optional<TwoDiskContrast> two_disks;

  explicit Problem(const ExperimentConfig& cfg)
      : layout(cfg.layout),
        frame(cfg.layout == Layout::core_shell ? BipolarFrame::core_shell(cfg.core_shell)
                                               : BipolarFrame::two_disks(cfg.two_disks)) {
    if (layout == Layout::core_shell)
      core_shell = contrast_from_conductivities(cfg.core_shell, frame);
    else
      two_disks = two_disk_contrast(cfg.two_disks, frame);
  }
  double beta() const { return core_shell ? core_shell->beta : two_disks->beta; }
  double tau() const { return core_shell ? core_shell->tau : two_disks->tau; }
  Regime regime() const { return core_shell ? core_shell->regime : two_disks->regime; }
};

void write_header(std::ostream& out, const char* command, const ExperimentConfig& cfg, const Problem& p) {
  out << "# gapfield " << command << '\n';
  out << "# config_hash = " << config_hash(cfg) << '\n';
  out << "# beta = " << format_number(p.beta()) << '\n';
  out << "# tau = " << format_number(p.tau()) << '\n';
  out << "# alpha = " << format_number(p.frame.alpha()) << '\n';
  out << "# r_star = " << format_number(p.frame.r_star()) << '\n';
  out << "# regime = " << regime_name(p.regime()) << '\n';
  std::istringstream echo(canonical_echo(cfg));
  for (std::string line; std::getline(echo, line);) out << "# config " << line << '\n';
}

void write_row(std::ostream& out, const std::vector<double>& v, const std::vector<std::string>& tail = {}) {
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << format_number(v[k]);
  for (const auto& t : tail) out << ',' << t;
  out << '\n';
}

TwoDiskCase two_disk_case(const TwoDiskContrast& c) {
  if (c.k_1 > 1 && c.k_2 > 1) return TwoDiskCase::resistive;
  if (c.k_1 < 1 && c.k_2 < 1) return TwoDiskCase::conductive;
  throw RegimeError("line charges need both disks resistive or both conductive");
}

using Evaluator = std::function<FieldSample(Point)>;

// Builds the evaluator of one method; nullopt with a reason when it does not apply.
std::optional<Evaluator> make_evaluator(Method m, const ExperimentConfig& cfg, const Problem& pb, std::string& why) {
  const HarmonicBackground& H = cfg.H;
  const auto [cx, cy] = linear_coefficients(H);
  const double r2 = pb.frame.r_star() * pb.frame.r_star();
  switch (m) {
    case Method::series: {
      if (pb.layout != Layout::core_shell) {
        why = "series needs a core-shell geometry";
        return std::nullopt;
      }
      if (!H.is_linear()) {
        why = "series needs a background of degree <= 1";
        return std::nullopt;
      }
      auto ts = std::make_shared<TransmissionSeries>(pb.frame, *pb.core_shell, cfg.tolerance.series);
      return Evaluator([ts, H](Point p) { return ts->evaluate(H, p); });
    }
    case Method::singular: {
      if (pb.regime() != Regime::blow_up_possible) throw RegimeError("singular method needs the blow-up regime");
      if (pb.layout == Layout::two_disks) {
        const BipolarFrame f = pb.frame;
        const TwoDiskContrast c = *pb.two_disks;
        return Evaluator([f, c, H](Point p) { return two_disk_singular_field(f, c, H, p); });
      }
      const BipolarFrame f = pb.frame;
      const MaterialContrast c = *pb.core_shell;
      const double tol = cfg.tolerance.lerch;
      return Evaluator([f, c, H, cx, cy, r2, tol](Point p) {
        FieldSample s;
        s.position = p;
        s.value = H.value(p);
        s.gradient = H.gradient(p);
        const cplx q = singular_q(f, c, p, tol);
        const SingularGradient g = grad_singular_q(f, c, p, tol);
        s.value += r2 * (cx * q.real() + cy * q.imag());
        s.gradient.x += r2 * (cx * g.grad_re.x + cy * g.grad_im.x);
        s.gradient.y += r2 * (cx * g.grad_re.y + cy * g.grad_im.y);
        return s;
      });
    }
    case Method::charges: {
      if (pb.regime() != Regime::blow_up_possible) throw RegimeError("charges method needs the blow-up regime");
      auto rep = std::make_shared<LineChargeRepresentation>(
          pb.layout == Layout::core_shell ? core_shell_charges(pb.frame, *pb.core_shell, cx, cy)
                                          : two_disk_charges(pb.frame, *pb.two_disks, two_disk_case(*pb.two_disks), cx, cy));
      return Evaluator([rep, H](Point p) {
        FieldSample s = eval_line_field(*rep, p);
        const FieldSample r = eval_line_remainder(*rep, p);
        const Point g = H.gradient(p);
        s.value += r.value + H.value(p);
        s.gradient = {s.gradient.x + r.gradient.x + g.x, s.gradient.y + r.gradient.y + g.y};
        return s;
      });
    }
    default: {
      const DenseSystem sys = pb.layout == Layout::core_shell
                                  ? assemble_core_shell(pb.frame, *pb.core_shell, H, cfg.tolerance.oracle_nodes)
                                  : assemble_two_disk(pb.frame, *pb.two_disks, H, cfg.tolerance.oracle_nodes);
      auto d = std::make_shared<BoundaryDensities>(solve_densities(sys));
      return Evaluator([d, H](Point p) { return eval_oracle(*d, H, p); });
    }
  }
}

std::vector<double> cell_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int cmd_field_grid(const ExperimentConfig& cfg, std::ostream& out) {
  const Problem pb(cfg);
  std::vector<std::pair<Method, Evaluator>> evals;
  std::vector<std::string> notes;
  for (Method m : cfg.methods) {
    std::string why;
    if (auto e = make_evaluator(m, cfg, pb, why))
      evals.emplace_back(m, std::move(*e));
    else
      notes.push_back(std::string(method_name(m)) + ": " + why);
  }
  if (evals.empty()) throw ConfigError("no requested method applies (" + notes.front() + ")");

  write_header(out, "field-grid", cfg, pb);
  for (const auto& n : notes) out << "# skipped " << n << '\n';
  out << "x,y,u,ux,uy,grad_norm,region,method\n";
  const std::vector<double> xs = cell_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.nx);
  const std::vector<double> ys = cell_grid(cfg.grid.y_min, cfg.grid.y_max, cfg.grid.ny);
  const int n = cfg.grid.nx * cfg.grid.ny;
  for (const auto& [m, eval] : evals) {
    std::vector<std::string> rows(n);
    parallel_for(n, [&](int k) {
      const Point p{xs[k % cfg.grid.nx], ys[k / cfg.grid.nx]};
      std::string region = "pole";
      double u = nan, ux = nan, uy = nan, g = nan;
      try {
        region = region_name(region_of(pb.frame, pb.frame.to_bipolar(p)));
        const FieldSample s = eval(p);
        const Point gH = cfg.H.gradient(p);
        u = s.value;
        ux = s.gradient.x;
        uy = s.gradient.y;
        g = norm({ux - gH.x, uy - gH.y});
      } catch (const DomainError&) {
        // guard band, pole or charge segment
      }
      std::ostringstream row;
      write_row(row, {p.x, p.y, u, ux, uy, g}, {region, method_name(m)});
      rows[k] = row.str();
    });
    for (const auto& r : rows) out << r;
  }
  return 0;
}

int cmd_boundary_profile(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.layout != Layout::core_shell) throw ConfigError("boundary-profile needs a core-shell geometry");
  const Problem pb(cfg);
  const BipolarFrame& f = pb.frame;
  const MaterialContrast& c = *pb.core_shell;
  const HarmonicBackground& H = cfg.H;
  const auto [cx, cy] = linear_coefficients(H);
  const double r2 = f.r_star() * f.r_star();
  const bool outer = cfg.boundary.circle == Interface::outer;
  const double xi0 = outer ? f.xi_e() : f.xi_i();
  const bool singular_ok = c.regime == Regime::blow_up_possible;

  // grad(u - H) against (e_xi, e_theta) at a boundary point
  const auto components = [&](BipolarPoint b, Point g) {
    const auto [exi, eth] = f.basis(b);
    return std::pair{dot(g, exi), dot(g, eth)};
  };
  const auto singular_normal = [&](BipolarPoint b) {
    if (!singular_ok) return nan;
    const SingularGradient g = grad_singular_q(f, c, b, Region::shell, cfg.tolerance.lerch);
    return components(b, {r2 * (cx * g.grad_re.x + cy * g.grad_im.x), r2 * (cx * g.grad_re.y + cy * g.grad_im.y)}).first;
  };

  std::vector<std::string> notes, blocks;
  for (Method m : cfg.methods) {
    std::ostringstream block;
    if (m == Method::series) {
      if (!H.is_linear()) {
        notes.push_back("series: needs a background of degree <= 1");
        continue;
      }
      const TransmissionSeries ts(f, c, cfg.tolerance.series);
      const int n = cfg.boundary.samples;
      std::vector<std::string> rows(n);
      parallel_for(n, [&](int k) {
        const BipolarPoint b{xi0, -pi + 2 * pi * k / n};
        const Point p = f.to_cartesian(b);
        const FieldSample s = ts.evaluate_branch(H, b, Region::shell);
        const Point gH = H.gradient(p);
        const auto [gn, gt] = components(b, {s.gradient.x - gH.x, s.gradient.y - gH.y});
        std::ostringstream row;
        write_row(row, {b.theta, p.x, p.y, gn, gt, singular_normal(b)}, {"series"});
        rows[k] = row.str();
      });
      for (const auto& r : rows) block << r;
    } else if (m == Method::singular) {
      if (!singular_ok) throw RegimeError("singular method needs the blow-up regime");
      const int n = cfg.boundary.samples;
      std::vector<std::string> rows(n);
      parallel_for(n, [&](int k) {
        const BipolarPoint b{xi0, -pi + 2 * pi * k / n};
        const Point p = f.to_cartesian(b);
        const SingularGradient g = grad_singular_q(f, c, b, Region::shell, cfg.tolerance.lerch);
        const auto [gn, gt] = components(
            b, {r2 * (cx * g.grad_re.x + cy * g.grad_im.x), r2 * (cx * g.grad_re.y + cy * g.grad_im.y)});
        std::ostringstream row;
        write_row(row, {b.theta, p.x, p.y, gn, gt, gn}, {"singular"});
        rows[k] = row.str();
      });
      for (const auto& r : rows) block << r;
    } else if (m == Method::oracle) {
      const BoundaryDensities d = solve_densities(assemble_core_shell(f, c, H, cfg.tolerance.oracle_nodes));
      const int j = outer ? 1 : 0;
      const auto& bd = d.boundaries[j];
      // shell side: inside the outer circle, outside the inner one
      const auto un = boundary_normal_derivative(d, H, j, outer ? -1 : +1);
      const auto ut = boundary_tangential_derivative(d, H, j);
      const auto hn = normal_derivative(bd, H);
      for (int a = 0; a < bd.size(); ++a) {
        const BipolarPoint b{xi0, bd.param[a]};
        const Point nu = bd.normals[a], T{-nu.y, nu.x};
        const double ht = dot(H.gradient(bd.nodes[a]), T);
        const Point g{(un[a] - hn[a]) * nu.x + (ut[a] - ht) * T.x, (un[a] - hn[a]) * nu.y + (ut[a] - ht) * T.y};
        const auto [gn, gt] = components(b, g);
        write_row(block, {b.theta, bd.nodes[a].x, bd.nodes[a].y, gn, gt, singular_normal(b)}, {"oracle"});
      }
    } else {
      notes.push_back("charges: not a boundary method");
      continue;
    }
    blocks.push_back(block.str());
  }
  if (blocks.empty()) throw ConfigError("no requested method applies to boundary-profile");
  write_header(out, "boundary-profile", cfg, pb);
  for (const auto& n : notes) out << "# skipped " << n << '\n';
  out << "theta,x,y,normal,tangential,singular_normal,method\n";
  for (const auto& b : blocks) out << b;
  return 0;
}

int cmd_charges(const ExperimentConfig& cfg, std::ostream& out) {
  const Problem pb(cfg);
  if (pb.regime() != Regime::blow_up_possible) throw RegimeError("line charges need the blow-up regime");
  const double a = pb.frame.alpha(), b = pb.beta();
  ChargeProfile left, right;
  if (pb.layout == Layout::core_shell) {
    const MaterialContrast& c = *pb.core_shell;
    left = make_profile(PoleSide::left, ChargeKind::monopole, a, b, 0, c.tau + c.tau_e);
    right = make_profile(PoleSide::right, ChargeKind::monopole, a, b, pb.frame.xi_i(), c.tau + c.tau_i);
  } else {
    const TwoDiskContrast& c = *pb.two_disks;
    const double sgn = two_disk_case(c) == TwoDiskCase::resistive ? 1 : -1;
    left = make_profile(PoleSide::left, ChargeKind::monopole, a, b, pb.frame.xi_1(), c.tau + sgn * c.tau_1);
    right = make_profile(PoleSide::right, ChargeKind::monopole, a, b, pb.frame.xi_2(), c.tau + sgn * c.tau_2);
  }
  write_header(out, "charges", cfg, pb);
  out << "# left segment = " << format_number(left.far_end()) << " .. " << format_number(left.pole()) << '\n';
  out << "# right segment = " << format_number(right.pole()) << " .. " << format_number(right.far_end()) << '\n';
  out << "s,phi,psi\n";
  const auto& cs = cfg.charges;
  for (int k = 0; k < cs.samples; ++k) {
    const double s = cs.s_min + (cs.s_max - cs.s_min) * (k + 0.5) / cs.samples;
    write_row(out, {s, 0.5 * (left.phi(s) - right.phi(s)), 0.5 * (left.psi(s) - right.psi(s))});
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.layout != Layout::core_shell) throw ConfigError("sweep needs a core-shell geometry");
  if (!cfg.H.is_linear()) throw ConfigError("sweep needs a background of degree <= 1");
  const std::vector<double> eps = cfg.sweep.epsilon.empty() ? std::vector{cfg.core_shell.epsilon} : cfg.sweep.epsilon;
  const std::vector<double> ks = cfg.sweep.k_e.empty() ? std::vector{cfg.core_shell.k_e} : cfg.sweep.k_e;
  const auto [cx, cy] = linear_coefficients(cfg.H);
  // validate every point before any output
  std::vector<CoreShellConfig> points;
  for (double k : ks)
    for (double e : eps) {
      CoreShellConfig c = cfg.core_shell;
      c.k_e = k;
      c.epsilon = e;
      c.validate();
      points.push_back(c);
    }
  const Problem pb(cfg);
  write_header(out, "sweep", cfg, pb);
  out << "epsilon,k_e,beta,tau,max_grad,scale,ratio\n";
  for (const auto& c : points) {
    const BipolarFrame f = BipolarFrame::core_shell(c);
    const MaterialContrast mc = contrast_from_conductivities(c, f);
    const TransmissionSeries ts(f, mc, cfg.tolerance.series);
    const double g = shell_sup_gradient(ts, cfg.H, {cfg.sweep.xi_levels, cfg.sweep.theta_samples});
    const double scale = 1 / (c.k_e + std::sqrt(c.epsilon) / f.r_star());
    const double c_norm = std::hypot(cx, cy);
    write_row(out, {c.epsilon, c.k_e, mc.beta, mc.tau, g, scale, c_norm > 0 ? g / (c_norm * scale) : nan});
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const std::vector<std::string>& suites, std::ostream& out) {
  const std::vector<SuiteResult> results = run_suites(cfg, suites.empty() ? cfg.verify.suites : suites);
  bool failed = false;
  for (const auto& r : results) {
    out << format_result(r) << '\n';
    failed = failed || r.status == SuiteStatus::fail;
  }
  return failed ? 1 : 0;
}

}  // namespace gapfield
