#pragma once

#include "gapfield/geometry.hpp"

namespace gapfield {

enum class Regime { blow_up_possible, bounded };

// Contrast scalars of the core-shell problem. When k_i == k_e the core is
// invisible: lambda_i is infinite and tau_i = 0.
struct MaterialContrast {
  double k_i = 1, k_e = 1, epsilon = 0, r_star = 0;
  double lambda_i = 0, lambda_e = 0;
  bool lambda_i_infinite = false;
  double tau_i = 0, tau_e = 0, tau = 0;
  double beta = 0;  // NaN unless 0 < tau < 1
  Regime regime = Regime::bounded;
};

struct TwoDiskContrast {
  double k_1 = 1, k_2 = 1, epsilon = 0, r_star = 0;
  double tau_1 = 0, tau_2 = 0, tau = 0;
  double beta = 0;
  Regime regime = Regime::bounded;
};

MaterialContrast contrast_from_conductivities(const CoreShellConfig& cfg, const BipolarFrame& frame);
TwoDiskContrast two_disk_contrast(const TwoDiskConfig& cfg, const BipolarFrame& frame);

// r_* (-ln tau) / (4 sqrt(eps)); NaN outside 0 < tau < 1.
double beta_of(double tau, double r_star, double epsilon);

// |(C_x, C_y)| / (k_e + sqrt(eps)/r_*).
double blow_up_scale(const MaterialContrast& c, double C_x, double C_y);

const char* regime_name(Regime r);

}  // namespace gapfield
