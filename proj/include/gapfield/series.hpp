#pragma once

#include <vector>

#include "gapfield/boundary.hpp"
#include "gapfield/contrast.hpp"
#include "gapfield/field.hpp"
#include "gapfield/harmonic.hpp"

namespace gapfield {

// Closed-form solution for a linear background on the core-shell geometry:
// u = H + C_x Re U + C_y Im U with U a Fourier series in bipolar coordinates.
class TransmissionSeries {
 public:
  TransmissionSeries(const BipolarFrame& frame, const MaterialContrast& contrast, double tol = 1e-12,
                     int min_terms = 64);

  int terms() const { return static_cast<int>(A_.size()); }
  const std::vector<double>& A() const { return A_; }
  const std::vector<double>& B() const { return B_; }
  double constant() const { return C_; }
  const BipolarFrame& frame() const { return frame_; }
  const MaterialContrast& contrast() const { return contrast_; }

  struct Value {
    cplx U, dUdx, dUdy;
  };
  // Evaluates the branch of `region`, which need not contain b.
  Value evaluate_U(BipolarPoint b, Region region) const;

  FieldSample evaluate(const HarmonicBackground& H, Point p) const;
  FieldSample evaluate_branch(const HarmonicBackground& H, BipolarPoint b, Region region) const;

  // Number of terms used at level xi in `region` for the requested tolerance.
  int terms_needed(double decay) const;

 private:
  BipolarFrame frame_;
  MaterialContrast contrast_;
  double tol_;
  double coef_max_ = 0;
  std::vector<double> A_, B_;
  double C_ = 0;
};

// Reflection-series single-layer densities on the core and shell circles,
// sampled at M bipolar nodes each.
BoundaryDensities reflection_densities(const BipolarFrame& frame, const MaterialContrast& contrast,
                                       const HarmonicBackground& H, int M, double tol = 1e-12);

// u = H + S_i[phi_i] + S_e[phi_e]; requires p at least one node spacing off both circles.
FieldSample eval_potential_via_layers(const BipolarFrame& frame, const BoundaryDensities& d,
                                      const HarmonicBackground& H, Point p);

// Outward unit normal of the frame circle at level xi0.
Point level_normal(const BipolarFrame& frame, BipolarPoint b);

}  // namespace gapfield
