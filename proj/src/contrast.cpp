#include "gapfield/contrast.hpp"

#include <cmath>
#include <limits>

#include "gapfield/error.hpp"

namespace gapfield {

namespace {
// Contrast below this is indistinguishable from a matched interface.
constexpr double kNegligibleContrast = 1e-12;
}

double beta_of(double tau, double r_star, double epsilon) {
  if (!(tau > 0) || !(tau < 1)) return std::numeric_limits<double>::quiet_NaN();
  return r_star * (-std::log(tau)) / (4 * std::sqrt(epsilon));
}

MaterialContrast contrast_from_conductivities(const CoreShellConfig& cfg, const BipolarFrame& frame) {
  cfg.validate();
  MaterialContrast c;
  c.k_i = cfg.k_i;
  c.k_e = cfg.k_e;
  c.epsilon = cfg.epsilon;
  c.r_star = frame.r_star();
  c.lambda_e = (cfg.k_e + 1) / (2 * (cfg.k_e - 1));
  c.lambda_i_infinite = cfg.k_i == cfg.k_e;
  c.lambda_i = c.lambda_i_infinite ? std::numeric_limits<double>::infinity()
                                   : (cfg.k_i + cfg.k_e) / (2 * (cfg.k_i - cfg.k_e));
  c.tau_i = (cfg.k_i - cfg.k_e) / (cfg.k_i + cfg.k_e);
  c.tau_e = (1 - cfg.k_e) / (1 + cfg.k_e);
  c.tau = c.tau_i * c.tau_e;
  c.beta = beta_of(c.tau, c.r_star, c.epsilon);
  c.regime = (c.tau_i > 0 && c.tau_e > 0) ? Regime::blow_up_possible : Regime::bounded;
  return c;
}

TwoDiskContrast two_disk_contrast(const TwoDiskConfig& cfg, const BipolarFrame& frame) {
  cfg.validate();
  TwoDiskContrast c;
  c.k_1 = cfg.k_1;
  c.k_2 = cfg.k_2;
  c.epsilon = cfg.epsilon;
  c.r_star = frame.r_star();
  c.tau_1 = (cfg.k_1 - 1) / (cfg.k_1 + 1);
  c.tau_2 = (cfg.k_2 - 1) / (cfg.k_2 + 1);
  c.tau = c.tau_1 * c.tau_2;
  c.beta = beta_of(c.tau, c.r_star, c.epsilon);
  const bool visible = std::abs(c.tau_1) > kNegligibleContrast && std::abs(c.tau_2) > kNegligibleContrast;
  c.regime = (visible && c.tau > 0) ? Regime::blow_up_possible : Regime::bounded;
  return c;
}

double blow_up_scale(const MaterialContrast& c, double C_x, double C_y) {
  return std::hypot(C_x, C_y) / (c.k_e + std::sqrt(c.epsilon) / c.r_star);
}

const char* regime_name(Regime r) {
  return r == Regime::blow_up_possible ? "blow_up_possible" : "bounded";
}

}  // namespace gapfield
