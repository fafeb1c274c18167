#include "gapfield/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gapfield/error.hpp"

namespace gapfield {

namespace {

using boost::property_tree::ptree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// property_tree keeps inline comments as part of the value
// and drops sections without keys, so headers are collected here too
std::string strip_comments(std::istream& in, std::vector<std::string>& headers) {
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto c = line.find_first_of("#;");
    if (c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.size() > 2 && line.front() == '[' && line.back() == ']') headers.push_back(trim(line.substr(1, line.size() - 2)));
    out << line << '\n';
  }
  return out.str();
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw ConfigError("'" + key + "': expected a number, got '" + t + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw ConfigError("'" + key + "': expected an integer, got '" + t + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(to_double(key, s));
  return out;
}

// Hands out the keys of one section and complains about leftovers.
class Section {
 public:
  Section(const ptree& tree, std::string name) : name_(std::move(name)) {
    if (const auto s = tree.get_child_optional(name_)) {
      present_ = true;
      for (const auto& [k, v] : *s) {
        if (!v.empty()) throw ConfigError("nested key '" + k + "' in [" + name_ + "]");
        values_[k] = v.data();
      }
    }
  }
  bool present() const { return present_; }
  std::optional<std::string> take(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }
  void number(const std::string& key, double& out) {
    if (auto v = take(key)) out = to_double(full(key), *v);
  }
  void integer(const std::string& key, int& out) {
    if (auto v = take(key)) out = to_int(full(key), *v);
  }
  std::map<std::string, std::string>& rest() { return values_; }
  void finish() const {
    if (!values_.empty()) throw ConfigError("unknown key '" + values_.begin()->first + "' in [" + name_ + "]");
  }
  std::string full(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  bool present_ = false;
  std::map<std::string, std::string> values_;
};

HarmonicBackground parse_background(Section& s) {
  HarmonicBackground H;
  if (!s.present()) return HarmonicBackground::linear(1, 0);
  s.number("a0", H.a0);
  std::map<int, std::pair<double, double>> coef;
  for (auto it = s.rest().begin(); it != s.rest().end();) {
    const std::string& k = it->first;
    if (k.size() >= 2 && (k[0] == 'a' || k[0] == 'b')) {
      const int n = to_int(s.full(k), k.substr(1));
      if (n < 1 || n > 64) throw ConfigError("'" + s.full(k) + "': degree must be in 1..64");
      auto& c = coef[n];
      (k[0] == 'a' ? c.first : c.second) = to_double(s.full(k), it->second);
      it = s.rest().erase(it);
    } else {
      ++it;
    }
  }
  s.finish();
  const int deg = coef.empty() ? 0 : coef.rbegin()->first;
  H.a.assign(deg, 0.0);
  H.b.assign(deg, 0.0);
  for (const auto& [n, c] : coef) {
    H.a[n - 1] = c.first;
    H.b[n - 1] = c.second;
  }
  return H;
}

void positive(const std::string& key, double v) {
  if (!(v > 0)) throw ConfigError("'" + key + "' must be positive");
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::singular: return "singular";
    case Method::charges: return "charges";
    default: return "oracle";
  }
}

std::vector<Method> parse_methods(const std::string& list) {
  const std::vector<Method> all{Method::series, Method::singular, Method::charges, Method::oracle};
  std::vector<Method> out;
  for (const auto& name : split_list(list)) {
    if (name == "all") return all;
    bool found = false;
    for (Method m : all)
      if (name == method_name(m)) {
        found = true;
        bool dup = false;
        for (Method o : out) dup = dup || o == m;
        if (!dup) out.push_back(m);
      }
    if (!found) throw ConfigError("unknown method '" + name + "'");
  }
  if (out.empty()) throw ConfigError("method set is empty");
  return out;
}

ExperimentConfig parse_config(std::istream& in) {
  std::vector<std::string> headers;
  std::istringstream clean(strip_comments(in, headers));
  ptree tree;
  try {
    boost::property_tree::read_ini(clean, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const std::set<std::string> known{"geometry", "background", "method", "grid", "boundary",
                                    "charges",  "sweep",      "tolerance", "verify"};
  for (const auto& [k, v] : tree) {
    if (v.empty()) throw ConfigError("key '" + k + "' outside a section");
    if (!known.count(k)) throw ConfigError("unknown section [" + k + "]");
  }
  for (const auto& h : headers) {
    if (!known.count(h)) throw ConfigError("unknown section [" + h + "]");
    if (!tree.get_child_optional(h)) tree.add_child(h, ptree());
  }

  ExperimentConfig cfg;
  Section geo(tree, "geometry");
  if (!geo.present()) throw ConfigError("missing [geometry] section");
  const std::string layout = trim(geo.take("layout").value_or("core_shell"));
  if (layout == "core_shell") {
    cfg.layout = Layout::core_shell;
    auto& g = cfg.core_shell;
    geo.number("r_i", g.r_i);
    geo.number("r_e", g.r_e);
    geo.number("epsilon", g.epsilon);
    geo.number("k_i", g.k_i);
    geo.number("k_e", g.k_e);
  } else if (layout == "two_disks") {
    cfg.layout = Layout::two_disks;
    auto& g = cfg.two_disks;
    geo.number("r_1", g.r_1);
    geo.number("r_2", g.r_2);
    geo.number("epsilon", g.epsilon);
    geo.number("k_1", g.k_1);
    geo.number("k_2", g.k_2);
  } else {
    throw ConfigError("geometry.layout must be core_shell or two_disks");
  }
  geo.finish();
  try {
    if (cfg.layout == Layout::core_shell)
      cfg.core_shell.validate();
    else
      cfg.two_disks.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid geometry: ") + e.what());
  }

  Section bg(tree, "background");
  cfg.H = parse_background(bg);

  Section me(tree, "method");
  if (auto v = me.take("use")) cfg.methods = parse_methods(*v);
  me.finish();

  Section gr(tree, "grid");
  gr.number("x_min", cfg.grid.x_min);
  gr.number("x_max", cfg.grid.x_max);
  gr.number("y_min", cfg.grid.y_min);
  gr.number("y_max", cfg.grid.y_max);
  gr.integer("nx", cfg.grid.nx);
  gr.integer("ny", cfg.grid.ny);
  gr.finish();
  if (!(cfg.grid.x_min < cfg.grid.x_max) || !(cfg.grid.y_min < cfg.grid.y_max))
    throw ConfigError("grid bounds must satisfy min < max");
  if (cfg.grid.nx < 1 || cfg.grid.ny < 1) throw ConfigError("grid.nx and grid.ny must be positive");

  Section bd(tree, "boundary");
  bd.integer("samples", cfg.boundary.samples);
  if (auto v = bd.take("circle")) {
    const std::string c = trim(*v);
    if (c == "inner")
      cfg.boundary.circle = Interface::inner;
    else if (c == "outer")
      cfg.boundary.circle = Interface::outer;
    else
      throw ConfigError("boundary.circle must be inner or outer");
  }
  bd.finish();
  if (cfg.boundary.samples < 1) throw ConfigError("boundary.samples must be positive");

  Section ch(tree, "charges");
  ch.number("s_min", cfg.charges.s_min);
  ch.number("s_max", cfg.charges.s_max);
  ch.integer("samples", cfg.charges.samples);
  ch.finish();
  if (!(cfg.charges.s_min < cfg.charges.s_max) || cfg.charges.samples < 1)
    throw ConfigError("charges needs s_min < s_max and samples > 0");

  Section sw(tree, "sweep");
  if (auto v = sw.take("epsilon")) cfg.sweep.epsilon = to_list("sweep.epsilon", *v);
  if (auto v = sw.take("k_e")) cfg.sweep.k_e = to_list("sweep.k_e", *v);
  sw.integer("xi_levels", cfg.sweep.xi_levels);
  sw.integer("theta_samples", cfg.sweep.theta_samples);
  sw.finish();
  for (double e : cfg.sweep.epsilon) positive("sweep.epsilon", e);
  for (double k : cfg.sweep.k_e) positive("sweep.k_e", k);
  if (cfg.sweep.xi_levels < 1 || cfg.sweep.theta_samples < 2)
    throw ConfigError("sweep needs xi_levels >= 1 and theta_samples >= 2");

  Section to(tree, "tolerance");
  to.number("series", cfg.tolerance.series);
  to.number("lerch", cfg.tolerance.lerch);
  to.number("crossval", cfg.tolerance.crossval);
  to.number("contrast", cfg.tolerance.contrast);
  to.integer("oracle_nodes", cfg.tolerance.oracle_nodes);
  to.finish();
  positive("tolerance.series", cfg.tolerance.series);
  positive("tolerance.lerch", cfg.tolerance.lerch);
  positive("tolerance.contrast", cfg.tolerance.contrast);
  if (cfg.tolerance.crossval < 0 || cfg.tolerance.oracle_nodes < 0)
    throw ConfigError("tolerance.crossval and tolerance.oracle_nodes must be non-negative");

  Section ve(tree, "verify");
  if (auto v = ve.take("suites")) cfg.verify.suites = split_list(*v);
  if (auto v = ve.take("expect_beta")) cfg.verify.expect_beta = to_double("verify.expect_beta", *v);
  if (auto v = ve.take("expect_tau")) cfg.verify.expect_tau = to_double("verify.expect_tau", *v);
  ve.finish();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

namespace {

// shortest text that reads back to the same double
struct Exact {
  double v;
};

std::ostream& operator<<(std::ostream& o, Exact e) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, e.v);
  return o.write(buf, r.ptr - buf);
}

}  // namespace

std::string canonical_echo(const ExperimentConfig& cfg) {
  std::ostringstream o;
  if (cfg.layout == Layout::core_shell) {
    const auto& g = cfg.core_shell;
    o << "geometry.layout = core_shell\ngeometry.r_i = " << Exact{g.r_i} << "\ngeometry.r_e = " << g.r_e
      << "\ngeometry.epsilon = " << Exact{g.epsilon} << "\ngeometry.k_i = " << Exact{g.k_i} << "\ngeometry.k_e = " << Exact{g.k_e} << '\n';
  } else {
    const auto& g = cfg.two_disks;
    o << "geometry.layout = two_disks\ngeometry.r_1 = " << Exact{g.r_1} << "\ngeometry.r_2 = " << g.r_2
      << "\ngeometry.epsilon = " << Exact{g.epsilon} << "\ngeometry.k_1 = " << Exact{g.k_1} << "\ngeometry.k_2 = " << Exact{g.k_2} << '\n';
  }
  o << "background.a0 = " << Exact{cfg.H.a0} << '\n';
  for (std::size_t n = 0; n < cfg.H.a.size(); ++n)
    o << "background.a" << n + 1 << " = " << Exact{cfg.H.a[n]} << "\nbackground.b" << n + 1 << " = " << Exact{cfg.H.b[n]} << '\n';
  o << "method.use = ";
  for (std::size_t k = 0; k < cfg.methods.size(); ++k) o << (k ? ", " : "") << method_name(cfg.methods[k]);
  const auto& gr = cfg.grid;
  o << "\ngrid.x_min = " << Exact{gr.x_min} << "\ngrid.x_max = " << Exact{gr.x_max} << "\ngrid.y_min = " << gr.y_min
    << "\ngrid.y_max = " << Exact{gr.y_max} << "\ngrid.nx = " << gr.nx << "\ngrid.ny = " << gr.ny << '\n';
  o << "boundary.samples = " << cfg.boundary.samples
    << "\nboundary.circle = " << (cfg.boundary.circle == Interface::inner ? "inner" : "outer") << '\n';
  o << "charges.s_min = " << Exact{cfg.charges.s_min} << "\ncharges.s_max = " << cfg.charges.s_max
    << "\ncharges.samples = " << cfg.charges.samples << '\n';
  const auto list = [&](const std::vector<double>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) o << (k ? ", " : "") << Exact{v[k]};
  };
  o << "sweep.epsilon = ";
  list(cfg.sweep.epsilon);
  o << "\nsweep.k_e = ";
  list(cfg.sweep.k_e);
  o << "\nsweep.xi_levels = " << cfg.sweep.xi_levels << "\nsweep.theta_samples = " << cfg.sweep.theta_samples << '\n';
  const auto& t = cfg.tolerance;
  o << "tolerance.series = " << Exact{t.series} << "\ntolerance.lerch = " << Exact{t.lerch} << "\ntolerance.crossval = "
    << Exact{t.crossval} << "\ntolerance.contrast = " << Exact{t.contrast} << "\ntolerance.oracle_nodes = " << t.oracle_nodes
    << '\n';
  o << "verify.suites = ";
  for (std::size_t k = 0; k < cfg.verify.suites.size(); ++k) o << (k ? ", " : "") << cfg.verify.suites[k];
  o << '\n';
  if (cfg.verify.expect_beta) o << "verify.expect_beta = " << Exact{*cfg.verify.expect_beta} << '\n';
  if (cfg.verify.expect_tau) o << "verify.expect_tau = " << Exact{*cfg.verify.expect_tau} << '\n';
  return o.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_echo(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gapfield
