#pragma once

#include "mlkcalc/funcmodel.hpp"
#include "mlkcalc/truncation.hpp"

#include <utility>
#include <vector>

namespace mlk {

// Normalisation function B(alpha).  The constant family is the default and
// matches every worked example; the exponential family e^{lambda*alpha} is
// provided for semigroup experiments since it satisfies B(a)B(b) = B(a+b).
// Note B(0) = B(1) = 1 forces lambda = 0, so non-zero lambda violates the
// endpoint convention; callers opting in accept that.
struct NormFamily {
    enum class Kind { one, exponential };
    Kind kind = Kind::one;
    double lambda = 0.0;

    static NormFamily one() { return {}; }
    static NormFamily exponential(double lambda) {
        return {Kind::exponential, lambda};
    }
    double operator()(double alpha) const;
};

// Order, base point and normalisation of one AB operator.  alpha is a strict
// open interval (0,1): the alpha -> 1 limit is distributional (Dirac delta)
// and out of numerical scope.
class ABParams {
public:
    ABParams(double alpha, double base, NormFamily norm = NormFamily::one());

    double alpha() const { return alpha_; }
    double base() const { return base_; }
    const NormFamily& norm() const { return norm_; }
    double b_value() const { return norm_(alpha_); }
    double front() const { return b_value() / (1.0 - alpha_); }      // B/(1-a)
    double kernel_coef() const { return -alpha_ / (1.0 - alpha_); }  // -a/(1-a)

private:
    double alpha_;
    double base_;
    NormFamily norm_;
};

struct ABSeriesReport {
    int terms_used = 0;
    double tail_estimate = 0.0;
};

// ---- kernel-quadrature machinery -------------------------------------------
//
// Product-trapezoid quadrature for convolutions against Mittag-Leffler
// kernels: the kernel is integrated exactly (per uniform cell) against the
// piecewise-linear interpolant of the history function, keeping O(h^2) even
// though d/du E_alpha(c u^alpha) ~ u^{alpha-1} at u -> 0+.

struct KernelMoments {
    std::vector<double> m0; // int over cell d of K(u) du
    std::vector<double> m1; // int over cell d of (u - d h) K(u) du
    double h = 0.0;
};

// Moments of K(u) = d/du E_alpha(c u^alpha) over cells [dh, (d+1)h].
KernelMoments ml_kernel_dt_moments(double alpha, double c, double h, int cells,
                                   const TruncationPolicy& pol = {});
// Moments of the bounded kernel E_alpha(c u^alpha) itself.
KernelMoments ml_kernel_moments(double alpha, double c, double h, int cells,
                                const TruncationPolicy& pol = {});

// out[j] = int_0^{t_j - t_0} g(t_j - u) K(u) du for every grid node.
std::vector<double> convolve_moments(const std::vector<double>& g,
                                     const KernelMoments& km);

// ---- AB operators -----------------------------------------------------------

// ABR derivative, kernel form, computed through the differentiated kernel
// (boundary term f(t) plus the integral of f against dE/du): avoids numerical
// d/dt of the integral.
SampledFn abr_derivative_kernel(const SampledFn& f, const ABParams& p,
                                const TruncationPolicy& pol = {});

// ABR derivative as the series of RL integrals
//   B/(1-a) sum_n (-a/(1-a))^n I^{a n} f,
// truncated per policy.  t_max is the largest point the truncation must
// cover; the reported tail_estimate is a rigorous bound there (terms with
// negative exponents are bounded at a small interior floor instead).
std::pair<PowerSum, ABSeriesReport> abr_derivative_series(
    const PowerSum& f, const ABParams& p, const TruncationPolicy& pol,
    double t_max);
std::pair<SampledFn, ABSeriesReport> abr_derivative_series(
    const SampledFn& f, const ABParams& p, const TruncationPolicy& pol = {});

// ABC derivative, series form: B/(1-a) sum_n (-a/(1-a))^n I^{a n + 1} f'.
std::pair<PowerSum, ABSeriesReport> abc_derivative_series(
    const PowerSum& f, const ABParams& p, const TruncationPolicy& pol,
    double t_max);
std::pair<SampledFn, ABSeriesReport> abc_derivative_series(
    const SmoothFn& f, const ABParams& p, double a, double b, int n,
    const TruncationPolicy& pol = {});

// ABC derivative, kernel form: quadrature of f' against E_alpha.
SampledFn abc_derivative_kernel(const SmoothFn& f, const ABParams& p, double a,
                                double b, int n,
                                const TruncationPolicy& pol = {});
// Sample-only variant through the identity
//   ABC D f = ABR D f - B/(1-a) f(a) E_alpha(c (t-a)^alpha),
// from integrating the kernel definition by parts; no derivative needed.
SampledFn abc_derivative_kernel(const SampledFn& f, const ABParams& p,
                                const TruncationPolicy& pol = {});
// Same identity with an explicit base value in place of the sampled trace
// f(a).  The linear ODE solution formulas are tied to the prescribed initial
// datum f(0), whose value the formula's own trace does not always reproduce;
// residual checks of those formulas need the operator relative to the datum.
SampledFn abc_derivative_kernel(const SampledFn& f, const ABParams& p,
                                double base_value,
                                const TruncationPolicy& pol);

// AB integral (1-a)/B f + a/B I^a f, inverse of the ABR derivative.
PowerSum ab_integral(const PowerSum& f, const ABParams& p);
SampledFn ab_integral(const SampledFn& f, const ABParams& p);

// ---- identity residuals -----------------------------------------------------

struct IdentityReport {
    double integral_after_abr;  // AB I^a (ABR D^a f) - f
    double abr_after_integral;  // ABR D^a (AB I^a f) - f
    double newton_leibniz;      // AB I^a (ABC D^a f) - (f - f(a))
    double commute_dd;          // D^a D^b - D^b D^a
    double commute_ii;          // I^a I^b - I^b I^a
    double commute_di;          // D^a I^b - I^b D^a
    double max() const;
};

// Max-norm residuals of the inverse/Newton-Leibniz/commutativity identities
// over npts points of [t_lo, t_hi], computed on the exact power-sum carrier
// so only series truncation enters.
IdentityReport verify_inverse_identities(const PowerSum& f, double alpha,
                                         double beta, double base,
                                         const NormFamily& norm,
                                         const TruncationPolicy& pol,
                                         double t_lo, double t_hi, int npts);

} // namespace mlk
