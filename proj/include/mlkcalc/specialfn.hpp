#pragma once

#include "mlkcalc/errors.hpp"
#include "mlkcalc/truncation.hpp"

namespace mlk {

// Argument bundle for the one-parameter Mittag-Leffler function E_alpha(x).
struct MLArg {
    double alpha; // order, must lie in (0, 1]
    double x;     // real argument
};

// Argument bundle for the Miller-Ross function E_t(nu, a).
struct MillerRossArg {
    double nu;
    double a_coef;
    double t; // must be > 0 when nu < 0 (t^nu singular at 0)
};

// Gamma(x) via the Lanczos approximation (g = 7, 9 coefficients), reflection
// formula for x < 0.5.  Good to >= 12 significant digits on [-170, 170].
// Throws PoleError at non-positive integers, OverflowError for x > 171.62.
double gamma(double x);

// log Gamma(x) for x > 0 (same Lanczos data, log form; no overflow).
double log_gamma(double x);

// 1/Gamma(x); exactly 0 at non-positive integers, never throws.
double recip_gamma(double x);

// Gamma(p)/Gamma(q) for p, q > 0, stable for large arguments.
double gamma_ratio(double p, double q);

// E_alpha(x) = sum_n x^n / Gamma(alpha*n + 1) by direct summation.
// Arguments below -50 are rejected with NoConvergence: the alternating series
// loses too many digits there and asymptotic regimes are out of scope.
double mittag_leffler(const MLArg& arg, const TruncationPolicy& pol = {});
double mittag_leffler(double alpha, double x, const TruncationPolicy& pol = {});

// d/du E_alpha(c*u^alpha) = sum_{n>=1} n*alpha*c^n*u^{n*alpha-1}/Gamma(n*alpha+1),
// the termwise-differentiated kernel; u > 0 (integrable singularity at 0+).
double mittag_leffler_kernel_dt(double alpha, double c, double u,
                                const TruncationPolicy& pol = {});

// Miller-Ross E_t(nu, a) = t^nu * sum_n (a t)^n / Gamma(nu+n+1), nu > -1.
//
// For a*t < 0 the direct sum cancels catastrophically once |a*t| is a few
// dozen (peak term ~ e^{|at|}), so that branch is evaluated through Kummer's
// transformation,
//   sum_n z^n/Gamma(b+n) = e^z / Gamma(b-1) * sum_k (-z)^k / (k! (b-1+k)),
// whose right-hand series has one sign change at most: every term is computed
// to full relative precision at any desk-scale |z|.
double miller_ross(const MillerRossArg& arg, const TruncationPolicy& pol = {});
double miller_ross(double nu, double a_coef, double t,
                   const TruncationPolicy& pol = {});

// E_t(nu, a) minus its leading term t^nu/Gamma(nu+1), i.e.
// a * t^{nu+1} * sum_n (a t)^n / Gamma(nu+n+2).  Exact head removal (no
// cancellation); used to split singular heads off solution families.
double miller_ross_minus_head(double nu, double a_coef, double t,
                              const TruncationPolicy& pol = {});

} // namespace mlk
