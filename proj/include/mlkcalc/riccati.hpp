#pragma once

#include "mlkcalc/ab_ops.hpp"

#include <vector>

namespace mlk {

// ABC D^a f = P + Q f^2, f(0) = f0, solved by the power-series ansatz
// f(t) = sum_k a_k t^{k a}.
//
// The printed coefficient recursion sums over k = 1..m-1 on both sides, so
// both sums are empty at m = 1; a_1 = 0 follows and, inductively, a_m = 0 for
// every m >= 1.  The series collapses to the equilibrium constant
// a_0 = +-sqrt(-P/Q) and f0 plays no role in the recursion.  It is
// implemented exactly as stated; the value of the module is the verified
// coefficient-identity machinery.
struct RiccatiSpec {
    double P = 0.0;
    double Q = 1.0; // must be non-zero
    double alpha = 0.5;
    NormFamily norm;
    enum class Sign { plus, minus } sign = Sign::plus;
    double f0 = 0.0; // carried but unused by the printed recursion

    double front() const { return norm(alpha) / (1.0 - alpha); }
};

// a_0..a_M.  Throws ComplexRoot when -P/Q < 0 and DenominatorZero when
// 2 Q a_0 == B/(1-a).
std::vector<double> riccati_coefficients(const RiccatiSpec& spec, int M);

double riccati_eval(const RiccatiSpec& spec, const std::vector<double>& coef,
                    double t);

// ABC derivative of the truncated ansatz, term by term: the coefficient of
// t^{m a} is front * sum_{k=1}^{min(m,M)} a_k (-a/(1-a))^{m-k} G(ka+1)/G(ma+1).
double riccati_abc_coefficient(const RiccatiSpec& spec,
                               const std::vector<double>& coef, int m);

// max over the grid of |ABC D^a f - P - Q f^2| with the derivative summed to
// index m_cap.
double riccati_residual(const RiccatiSpec& spec, const std::vector<double>& coef,
                        double t_lo, double t_hi, int npts, int m_cap = 64);

} // namespace mlk
