#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gapfield/config.hpp"

namespace gapfield {

// Each command writes its CSV (or report) to `out` and returns the exit code.
// ConfigError and RegimeError propagate to the caller.
int cmd_field_grid(const ExperimentConfig& cfg, std::ostream& out);
int cmd_boundary_profile(const ExperimentConfig& cfg, std::ostream& out);
int cmd_charges(const ExperimentConfig& cfg, std::ostream& out);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);
// Empty `suites` uses the config's list; 0 when nothing failed, 1 otherwise.
int cmd_verify(const ExperimentConfig& cfg, const std::vector<std::string>& suites, std::ostream& out);

// %.15g, with nan and inf spelled out
std::string format_number(double v);

}  // namespace gapfield
