#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gapfield/commands.hpp"
#include "gapfield/config.hpp"
#include "gapfield/error.hpp"

namespace {

enum Exit { ok = 0, verification_failed = 1, config_error = 2, regime_error = 3 };

std::vector<std::string> split(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::istringstream in(item);
    for (std::string s; std::getline(in, s, ',');)
      if (!s.empty()) out.push_back(s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fields of eccentric core-shell and nearly touching disk conductors"};
  app.require_subcommand(1);
  std::string config, out_path, method;
  std::vector<std::string> suites;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {{"field-grid", "potential and gradient on a Cartesian grid"},
                  {"boundary-profile", "normal and tangential gradient on a boundary circle"},
                  {"charges", "image line-charge densities"},
                  {"sweep", "shell gradient maxima over gap and conductivity lists"},
                  {"verify", "run the invariant suites"}};
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config, "experiment config file")->required();
    sub->add_option("--out", out_path, "write CSV here instead of stdout");
    sub->add_option("--suite", suites, "suite or check name (verify only; repeatable, comma-separated)");
    sub->add_option("--method", method, "comma-separated methods, overriding [method] use");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    gapfield::ExperimentConfig cfg = gapfield::load_config(config);
    if (!method.empty()) cfg.methods = gapfield::parse_methods(method);
    if (!suites.empty() && name != "verify") throw gapfield::ConfigError("--suite applies to verify only");

    std::ostringstream buf;
    int code = ok;
    if (name == "field-grid")
      code = gapfield::cmd_field_grid(cfg, buf);
    else if (name == "boundary-profile")
      code = gapfield::cmd_boundary_profile(cfg, buf);
    else if (name == "charges")
      code = gapfield::cmd_charges(cfg, buf);
    else if (name == "sweep")
      code = gapfield::cmd_sweep(cfg, buf);
    else
      code = gapfield::cmd_verify(cfg, split(suites), buf);

    if (out_path.empty()) {
      std::cout << buf.str() << std::flush;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!(f << buf.str())) throw gapfield::ConfigError("cannot write '" + out_path + "'");
    }
    return code;
  } catch (const gapfield::RegimeError& e) {
    std::cerr << "gapfield: regime error: " << e.what() << '\n';
    return regime_error;
  } catch (const gapfield::ConfigError& e) {
    std::cerr << "gapfield: config error: " << e.what() << '\n';
    return config_error;
  } catch (const gapfield::DomainError& e) {
    std::cerr << "gapfield: invalid input: " << e.what() << '\n';
    return config_error;
  }
}
