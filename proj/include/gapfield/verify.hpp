#pragma once

#include <string>
#include <vector>

#include "gapfield/boundary.hpp"
#include "gapfield/config.hpp"
#include "gapfield/contrast.hpp"
#include "gapfield/series.hpp"

namespace gapfield {

// Bipolar sample grid: xi_levels + 1 levels across a region (both edges
// included) times theta_samples angles on [-pi, pi), theta = 0 included.
struct LevelSampling {
  int xi_levels = 8, theta_samples = 256;
};

// sup |grad(u - H)| over the shell grid, shell-side limits on the circles.
double shell_sup_gradient(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s = {});
// sup |grad r| over the same grid (linear H, 0 < tau < 1).
double shell_sup_remainder(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s = {});
// sup |grad(u - H)| over exterior and core levels, limits taken from outside the shell.
double outside_sup_gradient(const TransmissionSeries& series, const HarmonicBackground& H, LevelSampling s = {});
// sup |grad(u - H)| at the nodes of both circles, taken from the shell side.
double shell_boundary_sup_gradient(const BoundaryDensities& d, const HarmonicBackground& H);
// sup over the shell grid of |grad(line potential) - r_*^2 (C_x grad Re q + C_y grad Im q)|.
double shell_sup_charge_difference(const BipolarFrame& frame, const MaterialContrast& c, double C_x, double C_y,
                                   LevelSampling s = {});

struct CrossValidation {
  double value_error = 0, gradient_error = 0;  // |a - b| / max(1, |b|)
  int points = 0;
};
// Series against the oracle on an n x n cell-centred grid over [-3, 3]^2,
// skipping points inside the oracle's guard bands.
CrossValidation cross_validate(const TransmissionSeries& series, const BoundaryDensities& oracle,
                               const HarmonicBackground& H, int n = 32);

enum class SuiteStatus { pass, fail, skip };

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::skip;
  double value = 0, tolerance = 0;
  std::string detail;
};

// Dotted check names grouped by suite: contrast, lerch, charges, layer,
// crossval, remainder, scaling, noblowup.
const std::vector<std::string>& suite_names();
// Runs every check whose suite (the part before the dot) or full name is listed;
// an empty list runs everything.
std::vector<SuiteResult> run_suites(const ExperimentConfig& cfg, const std::vector<std::string>& selection);
// "SUITE name PASS value tolerance"
std::string format_result(const SuiteResult& r);

// Fixed seed of every randomized check.
inline constexpr unsigned long long kVerifySeed = 20240611;

}  // namespace gapfield
