#pragma once

#include "mlkcalc/errors.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace mlk {

struct PowerTerm {
    double coef;
    double expo;
};

// Finite generalized power sum  sum_i c_i (t - a)^{b_i}  with b_i > -1.
// Terms are kept sorted by exponent; exponents closer than 1e-12 are merged
// on construction (they arise from arithmetic like k*alpha + m and must
// collapse reliably).
class PowerSum {
public:
    static constexpr double kExpoMergeTol = 1e-12;

    PowerSum() = default;
    PowerSum(double base, std::vector<PowerTerm> terms);

    static PowerSum monomial(double base, double coef, double expo);
    static PowerSum constant(double base, double value);

    double base() const { return base_; }
    const std::vector<PowerTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Evaluation; throws DomainError for t < base.  Negative exponents at
    // t == base produce an IEEE infinity rather than throwing.
    double eval(double t) const;

    PowerSum scaled(double c) const;
    PowerSum derivative() const; // termwise d/dt; needs all exponents >= 0 or > 0
    PowerSum operator+(const PowerSum& other) const;
    PowerSum operator-(const PowerSum& other) const;

    // sum_i |c_i| (T - a)^{b_i}: crude sup bound used by series tail estimates.
    double abs_eval(double T) const;

private:
    double base_ = 0.0;
    std::vector<PowerTerm> terms_;
};

// Function samples on the uniform grid t_j = a + j*h, h = (b-a)/(n-1).
struct SampledFn {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> values;
    // Set when the value at the base node diverges (stored as NaN), e.g. the
    // t^{-alpha} blowup of fractional derivatives of non-vanishing functions.
    bool singular_at_base = false;

    int n() const { return static_cast<int>(values.size()); }
    double h() const { return (b - a) / (n() - 1); }
    double t(int j) const { return a + j * h(); }
};

// Exact-derivative function model consumed by the product/chain rules: both
// need true k-th derivatives, never numerical differencing.
struct SmoothFn {
    std::function<double(double)> eval;
    std::function<double(int, double)> deriv; // deriv(0, t) == eval(t)
    int max_order = std::numeric_limits<int>::max();
};

SmoothFn to_smooth(const PowerSum& f);
SmoothFn smooth_exp(double rate); // t -> exp(rate * t)

SampledFn sample(const PowerSum& f, double a, double b, int n);
SampledFn sample(const SmoothFn& f, double a, double b, int n);
SampledFn sample(const std::function<double(double)>& f, double a, double b, int n);

// The function mini-language shared by the CLI and the ODE solvers: either a
// power sum or an exponential (the classes with closed-form Laplace
// transforms used by the nonlinear solver).
struct FuncModel {
    enum class Kind { power_sum, exponential };

    Kind kind = Kind::power_sum;
    PowerSum ps;       // kind == power_sum
    double rate = 0.0; // kind == exponential: exp(rate * t)

    static FuncModel power(PowerSum p);
    static FuncModel exponential(double rate);

    double eval(double t) const;
    SmoothFn smooth() const;
    SampledFn sample(double a, double b, int n) const;

    // Laplace transform (base point must be 0 for power sums).
    std::complex<double> laplace(std::complex<double> s) const;
};

} // namespace mlk
