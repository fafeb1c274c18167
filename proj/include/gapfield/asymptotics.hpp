#pragma once

#include "gapfield/contrast.hpp"
#include "gapfield/field.hpp"
#include "gapfield/harmonic.hpp"
#include "gapfield/series.hpp"

namespace gapfield {

struct SingularGradient {
  cplx dq_dxi, dq_dtheta;
  Point grad_re, grad_im;  // Cartesian gradients of Re q and Im q
};

// Singular function of the core-shell problem; requires 0 < tau < 1.
cplx singular_q(const BipolarFrame& frame, const MaterialContrast& c, Point p, double tol = 1e-12);
SingularGradient grad_singular_q(const BipolarFrame& frame, const MaterialContrast& c, Point p,
                                 double tol = 1e-12);
// Branch of `region` at b, which may lie on the region's boundary.
SingularGradient grad_singular_q(const BipolarFrame& frame, const MaterialContrast& c, BipolarPoint b,
                                 Region region, double tol = 1e-12);

// Leading shell term of grad(u - H); parallel to e_xi.
Point leading_gradient_shell(const BipolarFrame& frame, const MaterialContrast& c, double C_x, double C_y,
                             Point p);

// grad r = grad u - grad H - r_*^2 (C_x grad Re q + C_y grad Im q), u from the series.
Point remainder_field(const TransmissionSeries& series, const HarmonicBackground& H, Point p);

// Two-disk singular function with signed contrasts (t1, t2); tau = c.tau and beta = c.beta.
cplx two_disk_singular_q(const BipolarFrame& frame, const TwoDiskContrast& c, double t1, double t2, Point p,
                         double tol = 1e-12);
SingularGradient grad_two_disk_singular_q(const BipolarFrame& frame, const TwoDiskContrast& c, double t1,
                                          double t2, Point p, double tol = 1e-12);

// H + C_x r_*^2 Re q(t1,t2) + C_y r_*^2 Im q(-t1,-t2) without the remainder.
FieldSample two_disk_singular_field(const BipolarFrame& frame, const TwoDiskContrast& c,
                                    const HarmonicBackground& H, Point p);

// beta -> 0 singular term: logarithmic pair plus uniform dipole lines on
// [alpha, c_i] and (-inf, -alpha].
FieldSample beta_zero_singular(const BipolarFrame& frame, double C_x, double C_y, Point p);

}  // namespace gapfield
