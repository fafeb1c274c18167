#pragma once

#include <complex>

namespace gapfield {

using cplx = std::complex<double>;

struct LerchEval {
  cplx value;
  double error_estimate = 0;
};

// L(z;beta) = -int_0^inf z e^{-(beta+1)t} / (1 + z e^{-t}) dt
LerchEval lerch_L(cplx z, double beta, double tol = 1e-10);
// P(z;beta) = int_0^inf z e^{-(beta+1)t} / (1 + z e^{-t})^2 dt = -z dL/dz
LerchEval lerch_P(cplx z, double beta, double tol = 1e-10);

inline cplx eval_L(cplx z, double beta, double tol = 1e-10) { return lerch_L(z, beta, tol).value; }
inline cplx eval_P(cplx z, double beta, double tol = 1e-10) { return lerch_P(z, beta, tol).value; }

// a0 sum_{m>=1} tau^{m-1} e^{-m a0 + a + i theta} / (1 + e^{-m a0 + a + i theta})^2
cplx kernel_series_sum(double a0, double a, double theta, double tau);

}  // namespace gapfield
