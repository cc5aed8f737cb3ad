#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mlk {

namespace {

// Lanczos g = 7, n = 9 coefficient set (Godfrey / Numerical Recipes data).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kSqrtTwoPi = 2.5066282746310002;
constexpr double kPi = 3.14159265358979323846;
constexpr double kGammaOverflow = 171.624376956302;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// sin(pi*x) with argument reduction done on x itself, so it stays accurate
// for large |x| where sin(pi*x) directly would lose the small residue.
double sin_pi(double x) {
    double r = std::remainder(x, 2.0); // r in [-1, 1]
    return std::sin(kPi * r);
}

// Core Lanczos series A(z) for z >= 0.5.
double lanczos_sum(double z) {
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z - 1.0 + i);
    return acc;
}

double gamma_positive(double z) {
    // z >= 0.5; the t^{z-0.5} factor is split in two so intermediates stay in
    // range right up to the overflow threshold
    const double t = z + kLanczosG - 0.5;
    const double half_pow = std::pow(t, 0.5 * (z - 0.5));
    return kSqrtTwoPi * half_pow * std::exp(-t) * half_pow * lanczos_sum(z);
}

} // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma pole at x = " << x;
        throw PoleError(os.str());
    }
    if (x > kGammaOverflow) {
        std::ostringstream os;
        os << "gamma overflow for x = " << x;
        throw OverflowError(os.str());
    }
    if (x >= 0.5) return gamma_positive(x);
    // reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    return kPi / (sin_pi(x) * gamma_positive(1.0 - x));
}

double log_gamma(double x) {
    if (x <= 0.0) throw DomainError("log_gamma requires x > 0");
    if (x < 0.5) {
        // log Gamma(x) = log Gamma(x+1) - log x
        return log_gamma(x + 1.0) - std::log(x);
    }
    const double t = x + kLanczosG - 0.5;
    return std::log(kSqrtTwoPi) + (x - 0.5) * std::log(t) - t +
           std::log(lanczos_sum(x));
}

double recip_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return 1.0 / gamma_positive(x);
    // 1/Gamma(x) = sin(pi x) * Gamma(1-x) / pi; go through logs so that the
    // result degrades to +-inf instead of throwing when Gamma(1-x) overflows.
    const double s = sin_pi(x);
    const double lg = log_gamma(1.0 - x);
    return std::copysign(std::exp(lg + std::log(std::fabs(s) / kPi)), s);
}

double gamma_ratio(double p, double q) {
    if (p <= 0.0 || q <= 0.0) throw DomainError("gamma_ratio requires p, q > 0");
    if (p < 100.0 && q < 100.0) return gamma(p) / gamma(q);
    return std::exp(log_gamma(p) - log_gamma(q));
}

double mittag_leffler(double alpha, double x, const TruncationPolicy& pol) {
    return mittag_leffler(MLArg{alpha, x}, pol);
}

namespace {

// z^n / Gamma(alpha n + 1) at long-double precision.  Terms are built
// independently through expl/lgammal so cancellation between the big
// alternating terms of E_alpha(negative) is not amplified by accumulated
// recurrence error.
long double ml_term(double alpha, double z, int n) {
    if (n == 0) return 1.0L;
    if (z == 0.0) return 0.0L;
    const long double mag =
        expl(n * logl(fabsl((long double)z)) - lgammal(alpha * (long double)n + 1.0L));
    return (z < 0.0 && (n & 1)) ? -mag : mag;
}

} // namespace

double mittag_leffler(const MLArg& arg, const TruncationPolicy& pol) {
    const double alpha = arg.alpha;
    const double x = arg.x;
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
    if (x < -50.0)
        throw NoConvergence(
            "mittag_leffler: x < -50, alternating series too ill-conditioned");
    if (alpha == 1.0) return std::exp(x); // E_1 is the exponential, exactly

    SeriesSum acc(pol);
    for (int n = 0;; ++n) {
        const double term = static_cast<double>(ml_term(alpha, x, n));
        if (!std::isfinite(term))
            throw NoConvergence("mittag_leffler: series terms not finite");
        if (acc.add(term)) break;
        if (acc.exhausted())
            throw NoConvergence("mittag_leffler: term cap reached");
    }
    return acc.value();
}

double mittag_leffler_kernel_dt(double alpha, double c, double u,
                                const TruncationPolicy& pol) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("mittag_leffler_kernel_dt: alpha must lie in (0, 1]");
    if (!(u > 0.0))
        throw DomainError("mittag_leffler_kernel_dt: u must be > 0");
    const double z = c * std::pow(u, alpha);
    if (z < -50.0)
        throw NoConvergence("mittag_leffler_kernel_dt: c*u^alpha < -50");
    if (alpha == 1.0) return c * std::exp(c * u);

    // term_n = n*alpha/u * z^n / Gamma(alpha n + 1), n >= 1
    SeriesSum acc(pol);
    for (int n = 1;; ++n) {
        const double term =
            static_cast<double>(ml_term(alpha, z, n)) * n * alpha / u;
        if (!std::isfinite(term))
            throw NoConvergence("mittag_leffler_kernel_dt: terms not finite");
        if (acc.add(term)) break;
        if (acc.exhausted())
            throw NoConvergence("mittag_leffler_kernel_dt: term cap reached");
    }
    return acc.value();
}

namespace {

// S(b, z) = sum_n z^n / Gamma(b + n), b > 0.  Direct recurrence for z >= 0
// (all terms positive); Kummer-transformed series for z < 0.
double ml_shifted_sum(double b, double z, const TruncationPolicy& pol) {
    if (z >= 0.0) {
        SeriesSum acc(pol);
        long double term = recip_gamma(b);
        for (int n = 0;; ++n) {
            if (acc.add(static_cast<double>(term))) break;
            if (acc.exhausted())
                throw NoConvergence("miller_ross: term cap reached");
            term *= z / (b + n);
            if (!std::isfinite(static_cast<double>(term)))
                throw NoConvergence("miller_ross: series terms not finite");
        }
        return acc.value();
    }
    // b == 1 would put the 1/Gamma(b-1) prefactor at a pole; there the sum is
    // exactly exp(z).
    if (b == 1.0) return std::exp(z);
    SeriesSum acc(pol);
    long double power = 1.0L; // (-z)^k / k!
    for (int k = 0;; ++k) {
        if (acc.add(static_cast<double>(power) / (b - 1.0 + k))) break;
        if (acc.exhausted())
            throw NoConvergence("miller_ross: term cap reached");
        power *= (-z) / (k + 1);
        if (!std::isfinite(static_cast<double>(power)))
            throw NoConvergence("miller_ross: series terms not finite");
    }
    return std::exp(z) * recip_gamma(b - 1.0) * acc.value();
}

} // namespace

double miller_ross(double nu, double a_coef, double t,
                   const TruncationPolicy& pol) {
    return miller_ross(MillerRossArg{nu, a_coef, t}, pol);
}

double miller_ross(const MillerRossArg& arg, const TruncationPolicy& pol) {
    if (!(arg.nu > -1.0))
        throw DomainError("miller_ross: nu must be > -1");
    if (arg.nu < 0.0 && !(arg.t > 0.0))
        throw DomainError("miller_ross: t must be > 0 when nu < 0");
    if (arg.t < 0.0) throw DomainError("miller_ross: t must be >= 0");
    if (arg.t == 0.0) return arg.nu == 0.0 ? recip_gamma(1.0) : 0.0;
    const double z = arg.a_coef * arg.t;
    return std::pow(arg.t, arg.nu) * ml_shifted_sum(arg.nu + 1.0, z, pol);
}

double miller_ross_minus_head(double nu, double a_coef, double t,
                              const TruncationPolicy& pol) {
    if (!(nu > -1.0)) throw DomainError("miller_ross_minus_head: nu must be > -1");
    if (!(t >= 0.0)) throw DomainError("miller_ross_minus_head: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double z = a_coef * t;
    return a_coef * std::pow(t, nu + 1.0) * ml_shifted_sum(nu + 2.0, z, pol);
}

} // namespace mlk
