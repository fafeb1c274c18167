#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

#include "gapfield/asymptotics.hpp"
#include "gapfield/commands.hpp"
#include "gapfield/config.hpp"
#include "gapfield/contrast.hpp"
#include "gapfield/error.hpp"
#include "gapfield/lerch.hpp"
#include "gapfield/oracle.hpp"
#include "gapfield/series.hpp"

namespace py = pybind11;
using namespace gapfield;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Evaluates f at every (x, y) pair; returns (u, ux, uy) with NaN where f throws DomainError.
template <class F>
py::tuple sample(const Array& xs, const Array& ys, F f) {
  if (xs.size() != ys.size()) throw py::value_error("x and y must have the same size");
  const auto n = xs.size();
  Array u(xs.request().shape), ux(xs.request().shape), uy(xs.request().shape);
  const double *x = xs.data(), *y = ys.data();
  double *pu = u.mutable_data(), *px = ux.mutable_data(), *py_ = uy.mutable_data();
  {
    py::gil_scoped_release release;
    for (py::ssize_t k = 0; k < n; ++k) {
      try {
        const FieldSample s = f(Point{x[k], y[k]});
        pu[k] = s.value;
        px[k] = s.gradient.x;
        py_[k] = s.gradient.y;
      } catch (const DomainError&) {
        pu[k] = px[k] = py_[k] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return py::make_tuple(u, ux, uy);
}

std::string run(int (*cmd)(const ExperimentConfig&, std::ostream&), const ExperimentConfig& cfg) {
  std::ostringstream out;
  cmd(cfg, out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_gapfield, m) {
  m.doc() = "Gradient fields of eccentric core-shell and nearly touching disk conductors";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) { return "Point(" + format_number(p.x) + ", " + format_number(p.y) + ")"; });
  py::class_<BipolarPoint>(m, "BipolarPoint")
      .def(py::init<double, double>(), py::arg("xi"), py::arg("theta"))
      .def_readwrite("xi", &BipolarPoint::xi)
      .def_readwrite("theta", &BipolarPoint::theta);

  py::enum_<Layout>(m, "Layout").value("core_shell", Layout::core_shell).value("two_disks", Layout::two_disks);
  py::enum_<Regime>(m, "Regime")
      .value("blow_up_possible", Regime::blow_up_possible)
      .value("bounded", Regime::bounded);
  py::enum_<Region>(m, "Region")
      .value("core", Region::core)
      .value("shell", Region::shell)
      .value("exterior", Region::exterior)
      .value("disk_left", Region::disk_left)
      .value("disk_right", Region::disk_right);

  py::class_<CoreShellConfig>(m, "CoreShellConfig")
      .def(py::init([](double r_i, double r_e, double epsilon, double k_i, double k_e) {
             CoreShellConfig c{r_i, r_e, epsilon, k_i, k_e};
             c.validate();
             return c;
           }),
           py::arg("r_i") = 1.0, py::arg("r_e") = 2.0, py::arg("epsilon") = 0.1, py::arg("k_i") = 1.0,
           py::arg("k_e") = 0.01)
      .def_readonly("r_i", &CoreShellConfig::r_i)
      .def_readonly("r_e", &CoreShellConfig::r_e)
      .def_readonly("epsilon", &CoreShellConfig::epsilon)
      .def_readonly("k_i", &CoreShellConfig::k_i)
      .def_readonly("k_e", &CoreShellConfig::k_e);
  py::class_<TwoDiskConfig>(m, "TwoDiskConfig")
      .def(py::init([](double r_1, double r_2, double epsilon, double k_1, double k_2) {
             TwoDiskConfig c{r_1, r_2, epsilon, k_1, k_2};
             c.validate();
             return c;
           }),
           py::arg("r_1") = 1.0, py::arg("r_2") = 1.0, py::arg("epsilon") = 0.1, py::arg("k_1") = 10.0,
           py::arg("k_2") = 10.0)
      .def_readonly("r_1", &TwoDiskConfig::r_1)
      .def_readonly("r_2", &TwoDiskConfig::r_2)
      .def_readonly("epsilon", &TwoDiskConfig::epsilon)
      .def_readonly("k_1", &TwoDiskConfig::k_1)
      .def_readonly("k_2", &TwoDiskConfig::k_2);

  py::class_<BipolarFrame>(m, "BipolarFrame")
      .def_static("core_shell", &BipolarFrame::core_shell)
      .def_static("two_disks", &BipolarFrame::two_disks)
      .def_property_readonly("layout", &BipolarFrame::layout)
      .def_property_readonly("alpha", &BipolarFrame::alpha)
      .def_property_readonly("r_star", &BipolarFrame::r_star)
      .def_property_readonly("epsilon", &BipolarFrame::epsilon)
      .def_property_readonly("xi_i", &BipolarFrame::xi_i)
      .def_property_readonly("xi_e", &BipolarFrame::xi_e)
      .def_property_readonly("xi_1", &BipolarFrame::xi_1)
      .def_property_readonly("xi_2", &BipolarFrame::xi_2)
      .def("closest_points", &BipolarFrame::closest_points)
      .def("to_bipolar", &BipolarFrame::to_bipolar)
      .def("to_cartesian", &BipolarFrame::to_cartesian)
      .def("region", [](const BipolarFrame& f, Point p) { return region_of(f, f.to_bipolar(p)); });

  py::class_<MaterialContrast>(m, "MaterialContrast")
      .def_readonly("tau_i", &MaterialContrast::tau_i)
      .def_readonly("tau_e", &MaterialContrast::tau_e)
      .def_readonly("tau", &MaterialContrast::tau)
      .def_readonly("beta", &MaterialContrast::beta)
      .def_readonly("r_star", &MaterialContrast::r_star)
      .def_readonly("regime", &MaterialContrast::regime);
  py::class_<TwoDiskContrast>(m, "TwoDiskContrast")
      .def_readonly("tau_1", &TwoDiskContrast::tau_1)
      .def_readonly("tau_2", &TwoDiskContrast::tau_2)
      .def_readonly("tau", &TwoDiskContrast::tau)
      .def_readonly("beta", &TwoDiskContrast::beta)
      .def_readonly("r_star", &TwoDiskContrast::r_star)
      .def_readonly("regime", &TwoDiskContrast::regime);
  m.def("core_shell_contrast", [](const CoreShellConfig& c) {
    return contrast_from_conductivities(c, BipolarFrame::core_shell(c));
  });
  m.def("two_disk_contrast", [](const TwoDiskConfig& c) { return two_disk_contrast(c, BipolarFrame::two_disks(c)); });
  m.def("beta_of", &beta_of, py::arg("tau"), py::arg("r_star"), py::arg("epsilon"));

  py::class_<HarmonicBackground>(m, "HarmonicBackground")
      .def(py::init([](double a0, std::vector<double> a, std::vector<double> b) {
             return HarmonicBackground{a0, std::move(a), std::move(b)};
           }),
           py::arg("a0") = 0.0, py::arg("a") = std::vector<double>{}, py::arg("b") = std::vector<double>{})
      .def_static("linear", &HarmonicBackground::linear, py::arg("c_x"), py::arg("c_y"), py::arg("constant") = 0.0)
      .def_readonly("a0", &HarmonicBackground::a0)
      .def_readonly("a", &HarmonicBackground::a)
      .def_readonly("b", &HarmonicBackground::b)
      .def("value", &HarmonicBackground::value);

  py::class_<TransmissionSeries>(m, "TransmissionSeries")
      .def(py::init([](const CoreShellConfig& c, double tol) {
             const BipolarFrame f = BipolarFrame::core_shell(c);
             return TransmissionSeries(f, contrast_from_conductivities(c, f), tol);
           }),
           py::arg("config"), py::arg("tol") = 1e-12)
      .def_property_readonly("terms", &TransmissionSeries::terms)
      .def_property_readonly("frame", &TransmissionSeries::frame)
      .def_property_readonly("contrast", &TransmissionSeries::contrast)
      .def(
          "field",
          [](const TransmissionSeries& s, const HarmonicBackground& H, const Array& x, const Array& y) {
            return sample(x, y, [&](Point p) { return s.evaluate(H, p); });
          },
          py::arg("H"), py::arg("x"), py::arg("y"), "Potential and gradient (u, u_x, u_y) at the given points.");

  py::class_<BoundaryDensities>(m, "OracleSolution")
      .def(
          "field",
          [](const BoundaryDensities& d, const HarmonicBackground& H, const Array& x, const Array& y) {
            return sample(x, y, [&](Point p) { return eval_oracle(d, H, p); });
          },
          py::arg("H"), py::arg("x"), py::arg("y"));
  m.def(
      "solve_oracle",
      [](const CoreShellConfig& c, const HarmonicBackground& H, int nodes) {
        const BipolarFrame f = BipolarFrame::core_shell(c);
        return solve_densities(assemble_core_shell(f, contrast_from_conductivities(c, f), H, nodes));
      },
      py::arg("config"), py::arg("H"), py::arg("nodes") = 0,
      "Boundary-integral reference solution; nodes = 0 picks the count from the gap width.");
  m.def(
      "singular_q",
      [](const CoreShellConfig& c, Point p, double tol) {
        const BipolarFrame f = BipolarFrame::core_shell(c);
        return singular_q(f, contrast_from_conductivities(c, f), p, tol);
      },
      py::arg("config"), py::arg("p"), py::arg("tol") = 1e-12);
  m.def("lerch_L", &eval_L, py::arg("z"), py::arg("beta"), py::arg("tol") = 1e-10);
  m.def("lerch_P", &eval_P, py::arg("z"), py::arg("beta"), py::arg("tol") = 1e-10);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("layout", &ExperimentConfig::layout)
      .def_readonly("core_shell", &ExperimentConfig::core_shell)
      .def_readonly("two_disks", &ExperimentConfig::two_disks)
      .def_readonly("H", &ExperimentConfig::H)
      .def_property_readonly("hash", [](const ExperimentConfig& c) { return config_hash(c); })
      .def_property_readonly("echo", [](const ExperimentConfig& c) { return canonical_echo(c); })
      .def("set_methods", [](ExperimentConfig& c, const std::string& list) { c.methods = parse_methods(list); });
  m.def("load_config", &load_config, py::arg("path"));
  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
      },
      py::arg("text"));

  m.def("field_grid", [](const ExperimentConfig& c) { return run(cmd_field_grid, c); });
  m.def("boundary_profile", [](const ExperimentConfig& c) { return run(cmd_boundary_profile, c); });
  m.def("charges", [](const ExperimentConfig& c) { return run(cmd_charges, c); });
  m.def("sweep", [](const ExperimentConfig& c) { return run(cmd_sweep, c); });
  m.def(
      "verify",
      [](const ExperimentConfig& c, const std::vector<std::string>& suites) {
        std::ostringstream out;
        const int code = cmd_verify(c, suites, out);
        return py::make_tuple(code == 0, out.str());
      },
      py::arg("config"), py::arg("suites") = std::vector<std::string>{},
      "Runs the invariant suites; returns (all_passed, report).");
}
