#pragma once

#include <vector>

#include "gapfield/contrast.hpp"
#include "gapfield/field.hpp"

namespace gapfield {

enum class ChargeKind { monopole, dipole };
// right: segment [alpha, c0] next to p_2; left: [-c0, -alpha] next to p_1.
enum class PoleSide { right, left };

// Line charge on the x-axis. phi is the monopole density, psi the dipole
// density; psi grows from 0 at the pole to `weight` at the far end, and
// d psi / d sigma = phi with sigma the distance from the pole.
struct ChargeProfile {
  PoleSide side = PoleSide::right;
  ChargeKind kind = ChargeKind::monopole;
  double alpha = 0, beta = 0, xi0 = 0, weight = 1;
  std::vector<double> nodes, weights;  // sum_k weights[k] f(nodes[k]) ~ int f(s) density(s) ds

  double pole() const;
  double far_end() const;  // c0, or +-inf when xi0 == 0
  bool on_segment(double s) const;
  double phi(double s) const;
  double psi(double s) const;
  // Same densities at distance sigma >= 0 from the pole (no segment check).
  double phi_at(double sigma) const;
  double psi_at(double sigma) const;
  double density(double s) const { return kind == ChargeKind::monopole ? phi(s) : psi(s); }
};

ChargeProfile make_profile(PoleSide side, ChargeKind kind, double alpha, double beta, double xi0, double weight);

// coef * (-ln|x - c0| + constant); the log is absent when xi0 == 0.
struct RemainderTerm {
  double coef = 0;
  double center = 0;
  bool has_log = true;
  double constant = 0;
};

struct LineChargeRepresentation {
  struct Term {
    double coef;
    ChargeProfile profile;
  };
  std::vector<Term> terms;
  std::vector<RemainderTerm> remainder;
};

// Shell representation of the singular part for background slope (C_x, C_y).
LineChargeRepresentation core_shell_charges(const BipolarFrame& frame, const MaterialContrast& c, double C_x = 1,
                                            double C_y = 1);

enum class TwoDiskCase { resistive, conductive };  // both k > 1, both k < 1
LineChargeRepresentation two_disk_charges(const BipolarFrame& frame, const TwoDiskContrast& c, TwoDiskCase which,
                                          double C_x = 1, double C_y = 1);

// Singular part carried by the charges (no background, no remainder).
double eval_line_potential(const LineChargeRepresentation& rep, Point p);
FieldSample eval_line_field(const LineChargeRepresentation& rep, Point p);
// Closed-form remainder and its gradient.
FieldSample eval_line_remainder(const LineChargeRepresentation& rep, Point p);

// Charge part of L(e^{w - 2 xi0}) (right) or L(e^{-w - 2 xi0}) (left):
// int ln|x-s| phi -+ i int <x-s, e_y>/|x-s|^2 psi.
cplx lerch_via_charges(const BipolarFrame& frame, double xi0, double beta, Point p, PoleSide side);
// Matching closed-form real remainder.
double lerch_charge_remainder(const BipolarFrame& frame, double xi0, double beta, Point p, PoleSide side);

}  // namespace gapfield
