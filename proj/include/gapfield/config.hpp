#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "gapfield/geometry.hpp"
#include "gapfield/harmonic.hpp"

namespace gapfield {

enum class Method { series, singular, charges, oracle };

const char* method_name(Method m);
// "all" expands to every method; throws ConfigError on unknown names.
std::vector<Method> parse_methods(const std::string& list);

struct GridSpec {
  double x_min = -3, x_max = 3, y_min = -3, y_max = 3;
  int nx = 200, ny = 200;
};

struct BoundarySpec {
  int samples = 720;
  Interface circle = Interface::outer;
};

struct ChargesSpec {
  double s_min = -1, s_max = 1;
  int samples = 401;
};

// Empty lists fall back to the geometry block's value.
struct SweepSpec {
  std::vector<double> epsilon, k_e;
  int xi_levels = 8, theta_samples = 256;
};

struct Tolerances {
  double series = 1e-12;
  double lerch = 1e-12;
  double crossval = 0;  // 0: 1e-6 for eps >= 0.01, else 1e-5
  double contrast = 5e-4;
  int oracle_nodes = 0;  // 0: auto
};

struct VerifySpec {
  std::vector<std::string> suites;  // empty: default set
  std::optional<double> expect_beta, expect_tau;
};

struct ExperimentConfig {
  Layout layout = Layout::core_shell;
  CoreShellConfig core_shell;
  TwoDiskConfig two_disks;
  HarmonicBackground H = HarmonicBackground::linear(1, 0);
  std::vector<Method> methods{Method::series};
  GridSpec grid;
  BoundarySpec boundary;
  ChargesSpec charges;
  SweepSpec sweep;
  Tolerances tolerance;
  VerifySpec verify;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Normalized key = value listing of every field, one per line.
std::string canonical_echo(const ExperimentConfig& cfg);
// 64-bit FNV-1a of the canonical echo, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace gapfield
