#include "mlkcalc/ab_ops.hpp"

#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/specialfn.hpp"

#include <algorithm>
#include <cmath>

namespace mlk {

double NormFamily::operator()(double alpha) const {
    switch (kind) {
        case Kind::one: return 1.0;
        case Kind::exponential: return std::exp(lambda * alpha);
    }
    return 1.0;
}

ABParams::ABParams(double alpha, double base, NormFamily norm)
    : alpha_(alpha), base_(base), norm_(norm) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("ABParams: alpha must lie strictly inside (0, 1)");
    if (!(b_value() > 0.0))
        throw DomainError("ABParams: B(alpha) must be positive");
}

namespace {

// z^n / Gamma(alpha n + shift) with the power and the gamma balanced in log
// space, so growing kernels (positive z from ODE relaxation rates) do not
// overflow the raw power before the division.
double ml_series_term(double alpha, double z, int n, double shift) {
    if (n == 0) return recip_gamma(shift);
    if (z == 0.0) return 0.0;
    const long double mag = expl(n * logl(fabsl((long double)z)) -
                                 lgammal(alpha * (long double)n + shift));
    const double v = static_cast<double>(mag);
    return (z < 0.0 && (n & 1)) ? -v : v;
}

// sum_n c^n v^{n a} / Gamma(n a + 2); together with E_alpha this gives the
// exact cell moments of the differentiated kernel: int_0^v E = v * S2(v).
double ml_s2(double alpha, double c, double v, const TruncationPolicy& pol) {
    if (v == 0.0) return recip_gamma(2.0);
    const double z = c * std::pow(v, alpha);
    SeriesSum acc(pol);
    for (int n = 0;; ++n) {
        const double term = ml_series_term(alpha, z, n, 2.0);
        if (!std::isfinite(term)) throw NoConvergence("ml_s2: terms not finite");
        if (acc.add(term)) break;
        if (acc.exhausted()) throw NoConvergence("ml_s2: term cap reached");
    }
    return acc.value();
}

// sum_n c^n v^{n a} / ((n a + 2) Gamma(n a + 1)): int_0^v u E du = v^2 S3(v).
double ml_s3(double alpha, double c, double v, const TruncationPolicy& pol) {
    if (v == 0.0) return 0.5;
    const double z = c * std::pow(v, alpha);
    SeriesSum acc(pol);
    for (int n = 0;; ++n) {
        const double term =
            ml_series_term(alpha, z, n, 1.0) / (n * alpha + 2.0);
        if (!std::isfinite(term)) throw NoConvergence("ml_s3: terms not finite");
        if (acc.add(term)) break;
        if (acc.exhausted()) throw NoConvergence("ml_s3: term cap reached");
    }
    return acc.value();
}

} // namespace

KernelMoments ml_kernel_dt_moments(double alpha, double c, double h, int cells,
                                   const TruncationPolicy& pol) {
    KernelMoments km;
    km.h = h;
    km.m0.resize(cells);
    km.m1.resize(cells);
    // node values E(u_d) and u_d * S2(u_d)
    std::vector<double> e(cells + 1), is2(cells + 1);
    for (int d = 0; d <= cells; ++d) {
        const double u = d * h;
        e[d] = (d == 0) ? 1.0
                        : mittag_leffler(alpha, c * std::pow(u, alpha), pol);
        is2[d] = u * ml_s2(alpha, c, u, pol);
    }
    for (int d = 0; d < cells; ++d) {
        km.m0[d] = e[d + 1] - e[d];
        km.m1[d] = h * e[d + 1] - (is2[d + 1] - is2[d]);
    }
    return km;
}

KernelMoments ml_kernel_moments(double alpha, double c, double h, int cells,
                                const TruncationPolicy& pol) {
    KernelMoments km;
    km.h = h;
    km.m0.resize(cells);
    km.m1.resize(cells);
    std::vector<double> ie(cells + 1), iue(cells + 1);
    for (int d = 0; d <= cells; ++d) {
        const double u = d * h;
        ie[d] = u * ml_s2(alpha, c, u, pol);
        iue[d] = u * u * ml_s3(alpha, c, u, pol);
    }
    for (int d = 0; d < cells; ++d) {
        km.m0[d] = ie[d + 1] - ie[d];
        km.m1[d] = (iue[d + 1] - iue[d]) - d * h * km.m0[d];
    }
    return km;
}

std::vector<double> convolve_moments(const std::vector<double>& g,
                                     const KernelMoments& km) {
    const int n = static_cast<int>(g.size());
    std::vector<double> out(n, 0.0);
    for (int j = 1; j < n; ++j) {
        double acc = 0.0;
        for (int d = 0; d < j; ++d) {
            const double g_near = g[j - d];     // value at u = d h
            const double g_far = g[j - d - 1];  // value at u = (d+1) h
            acc += g_near * km.m0[d] + (g_far - g_near) * (km.m1[d] / km.h);
        }
        out[j] = acc;
    }
    return out;
}

SampledFn abr_derivative_kernel(const SampledFn& f, const ABParams& p,
                                const TruncationPolicy& pol) {
    if (f.a != p.base())
        throw DomainError("abr_derivative_kernel: grid must start at the base point");
    const int n = f.n();
    const KernelMoments km =
        ml_kernel_dt_moments(p.alpha(), p.kernel_coef(), f.h(), n - 1, pol);
    const std::vector<double> conv = convolve_moments(f.values, km);
    SampledFn out = f;
    out.singular_at_base = false;
    const double front = p.front();
    for (int j = 0; j < n; ++j) out.values[j] = front * (f.values[j] + conv[j]);
    return out;
}

SampledFn abc_derivative_kernel(const SmoothFn& f, const ABParams& p, double a,
                                double b, int n, const TruncationPolicy& pol) {
    if (a != p.base())
        throw DomainError("abc_derivative_kernel: grid must start at the base point");
    SampledFn fp = sample([&f](double t) { return f.deriv(1, t); }, a, b, n);
    const KernelMoments km =
        ml_kernel_moments(p.alpha(), p.kernel_coef(), fp.h(), n - 1, pol);
    const std::vector<double> conv = convolve_moments(fp.values, km);
    SampledFn out = fp;
    const double front = p.front();
    for (int j = 0; j < n; ++j) out.values[j] = front * conv[j];
    return out;
}

SampledFn abc_derivative_kernel(const SampledFn& f, const ABParams& p,
                                const TruncationPolicy& pol) {
    return abc_derivative_kernel(f, p, f.values[0], pol);
}

SampledFn abc_derivative_kernel(const SampledFn& f, const ABParams& p,
                                double base_value,
                                const TruncationPolicy& pol) {
    SampledFn out = abr_derivative_kernel(f, p, pol);
    if (base_value != 0.0) {
        const double front = p.front();
        const double c = p.kernel_coef();
        for (int j = 0; j < out.n(); ++j) {
            const double u = out.t(j) - out.a;
            const double e =
                (j == 0) ? 1.0
                         : mittag_leffler(p.alpha(), c * std::pow(u, p.alpha()), pol);
            out.values[j] -= front * base_value * e;
        }
    }
    return out;
}

namespace {

// Rigorous sup bound of |I^{mu} applied to one power term| over (a, T]:
// |c| Gamma(b+1)/Gamma(b+mu+1) (t-a)^{b+mu}.  Negative exponents are bounded
// at the interior floor instead of T (they decrease in t).
double term_tail_bound(double abs_coef, double expo, double mu, double span,
                       double floor_frac = 0.05) {
    const double e = expo + mu;
    const double at = (e >= 0.0) ? span : span * floor_frac;
    return abs_coef * gamma(expo + 1.0) *
           std::fabs(recip_gamma(e + 1.0)) * std::pow(at, e);
}

// Tail of the ABR/ABC series bound, starting at m = start.
double series_tail_bound(const PowerSum& f, double alpha, double front,
                         double ratio, double span, int start,
                         double extra_shift) {
    double tail = 0.0;
    double rm = std::pow(ratio, start);
    for (int m = start; m < start + 4000; ++m) {
        double inc = 0.0;
        for (const auto& t : f.terms())
            inc += term_tail_bound(std::fabs(t.coef), t.expo,
                                   alpha * m + extra_shift, span);
        inc *= front * rm;
        tail += inc;
        if (inc <= 1e-6 * tail + 1e-300) break;
        rm *= ratio;
    }
    return tail;
}

double grid_tail_bound(double max_abs_f, double alpha, double front,
                       double ratio, double span, int start,
                       double extra_shift) {
    double tail = 0.0;
    double rm = std::pow(ratio, start);
    for (int m = start; m < start + 4000; ++m) {
        const double mu = alpha * m + extra_shift;
        const double inc =
            front * rm * max_abs_f * std::pow(span, mu) * recip_gamma(mu + 1.0);
        tail += inc;
        if (inc <= 1e-6 * tail + 1e-300) break;
        rm *= ratio;
    }
    return tail;
}

} // namespace

std::pair<PowerSum, ABSeriesReport> abr_derivative_series(
    const PowerSum& f, const ABParams& p, const TruncationPolicy& pol,
    double t_max) {
    if (!(t_max > p.base()))
        throw DomainError("abr_derivative_series: t_max must exceed the base");
    if (f.base() != p.base())
        throw DomainError("abr_derivative_series: base mismatch");
    const double kc = p.kernel_coef();
    const double front = p.front();
    const double span = t_max - p.base();

    PowerSum acc;
    PowerSum cur = f; // I^{alpha n} f
    double weight = front;
    int small_run = 0;
    int n = 0;
    for (;; ++n) {
        if (n >= pol.max_terms)
            throw NoConvergence("abr_derivative_series: term cap reached");
        acc = acc.empty() ? cur.scaled(weight) : acc + cur.scaled(weight);
        const double measure = std::fabs(weight) * cur.abs_eval(t_max);
        const double thresh =
            pol.abs_tol + pol.rel_tol * std::fabs(acc.eval(t_max));
        small_run = (measure <= thresh) ? small_run + 1 : 0;
        if (small_run >= 3) break;
        cur = rl::integral(cur, p.alpha());
        weight *= kc;
    }
    ABSeriesReport rep;
    rep.terms_used = n + 1;
    rep.tail_estimate = series_tail_bound(f, p.alpha(), front, std::fabs(kc),
                                          span, n + 1, 0.0);
    return {std::move(acc), rep};
}

std::pair<SampledFn, ABSeriesReport> abr_derivative_series(
    const SampledFn& f, const ABParams& p, const TruncationPolicy& pol) {
    if (f.a != p.base())
        throw DomainError("abr_derivative_series: grid must start at the base point");
    const int n = f.n();
    const double kc = p.kernel_coef();
    const double front = p.front();
    double max_abs_f = 0.0;
    for (double v : f.values) max_abs_f = std::max(max_abs_f, std::fabs(v));

    SampledFn acc = f;
    acc.values.assign(n, 0.0);
    double weight = front;
    int small_run = 0;
    int m = 0;
    for (;; ++m) {
        if (m >= pol.max_terms)
            throw NoConvergence("abr_derivative_series: term cap reached");
        // each term is one direct quadrature at order alpha*m; composing the
        // grid operator m times would compound its O(h^2) error
        const SampledFn cur =
            (m == 0) ? f : rl::integral(f, p.alpha() * m);
        double term_max = 0.0, acc_max = 0.0;
        for (int j = 0; j < n; ++j) {
            acc.values[j] += weight * cur.values[j];
            term_max = std::max(term_max, std::fabs(weight * cur.values[j]));
            acc_max = std::max(acc_max, std::fabs(acc.values[j]));
        }
        const double thresh = pol.abs_tol + pol.rel_tol * acc_max;
        small_run = (term_max <= thresh) ? small_run + 1 : 0;
        if (small_run >= 3) break;
        weight *= kc;
    }
    ABSeriesReport rep;
    rep.terms_used = m + 1;
    rep.tail_estimate = grid_tail_bound(max_abs_f, p.alpha(), front,
                                        std::fabs(kc), f.b - f.a, m + 1, 0.0);
    return {std::move(acc), rep};
}

std::pair<PowerSum, ABSeriesReport> abc_derivative_series(
    const PowerSum& f, const ABParams& p, const TruncationPolicy& pol,
    double t_max) {
    if (f.base() != p.base())
        throw DomainError("abc_derivative_series: base mismatch");
    PowerSum fp = f.derivative();
    if (fp.empty()) return {PowerSum(f.base(), {}), ABSeriesReport{1, 0.0}};
    const double kc = p.kernel_coef();
    const double front = p.front();

    PowerSum acc;
    PowerSum cur = rl::integral(fp, 1.0); // I^{alpha n + 1} f'
    double weight = front;
    int small_run = 0;
    int n = 0;
    for (;; ++n) {
        if (n >= pol.max_terms)
            throw NoConvergence("abc_derivative_series: term cap reached");
        acc = acc.empty() ? cur.scaled(weight) : acc + cur.scaled(weight);
        const double measure = std::fabs(weight) * cur.abs_eval(t_max);
        const double thresh =
            pol.abs_tol + pol.rel_tol * std::fabs(acc.eval(t_max));
        small_run = (measure <= thresh) ? small_run + 1 : 0;
        if (small_run >= 3) break;
        cur = rl::integral(cur, p.alpha());
        weight *= kc;
    }
    ABSeriesReport rep;
    rep.terms_used = n + 1;
    rep.tail_estimate = series_tail_bound(fp, p.alpha(), front, std::fabs(kc),
                                          t_max - p.base(), n + 1, 1.0);
    return {std::move(acc), rep};
}

std::pair<SampledFn, ABSeriesReport> abc_derivative_series(
    const SmoothFn& f, const ABParams& p, double a, double b, int n,
    const TruncationPolicy& pol) {
    if (a != p.base())
        throw DomainError("abc_derivative_series: grid must start at the base point");
    SampledFn fp = sample([&f](double t) { return f.deriv(1, t); }, a, b, n);
    const double kc = p.kernel_coef();
    const double front = p.front();
    double max_abs_fp = 0.0;
    for (double v : fp.values) max_abs_fp = std::max(max_abs_fp, std::fabs(v));

    SampledFn acc = fp;
    acc.values.assign(n, 0.0);
    double weight = front;
    int small_run = 0;
    int m = 0;
    for (;; ++m) {
        if (m >= pol.max_terms)
            throw NoConvergence("abc_derivative_series: term cap reached");
        const SampledFn cur = rl::integral(fp, p.alpha() * m + 1.0);
        double term_max = 0.0, acc_max = 0.0;
        for (int j = 0; j < n; ++j) {
            acc.values[j] += weight * cur.values[j];
            term_max = std::max(term_max, std::fabs(weight * cur.values[j]));
            acc_max = std::max(acc_max, std::fabs(acc.values[j]));
        }
        const double thresh = pol.abs_tol + pol.rel_tol * acc_max;
        small_run = (term_max <= thresh) ? small_run + 1 : 0;
        if (small_run >= 3) break;
        weight *= kc;
    }
    ABSeriesReport rep;
    rep.terms_used = m + 1;
    rep.tail_estimate = grid_tail_bound(max_abs_fp, p.alpha(), front,
                                        std::fabs(kc), b - a, m + 1, 1.0);
    return {std::move(acc), rep};
}

PowerSum ab_integral(const PowerSum& f, const ABParams& p) {
    if (f.base() != p.base()) throw DomainError("ab_integral: base mismatch");
    if (f.empty()) return f;
    const double B = p.b_value();
    const double a = p.alpha();
    return f.scaled((1.0 - a) / B) + rl::integral(f, a).scaled(a / B);
}

SampledFn ab_integral(const SampledFn& f, const ABParams& p) {
    if (f.a != p.base())
        throw DomainError("ab_integral: grid must start at the base point");
    const double B = p.b_value();
    const double a = p.alpha();
    SampledFn ri = rl::integral(f, a);
    SampledFn out = f;
    for (int j = 0; j < f.n(); ++j)
        out.values[j] = (1.0 - a) / B * f.values[j] + a / B * ri.values[j];
    return out;
}

double IdentityReport::max() const {
    return std::max({integral_after_abr, abr_after_integral, newton_leibniz,
                     commute_dd, commute_ii, commute_di});
}

namespace {

double max_residual(const PowerSum& lhs, const PowerSum& rhs, double t_lo,
                    double t_hi, int npts) {
    double worst = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (npts - 1);
        worst = std::max(worst, std::fabs(lhs.eval(t) - rhs.eval(t)));
    }
    return worst;
}

} // namespace

IdentityReport verify_inverse_identities(const PowerSum& f, double alpha,
                                         double beta, double base,
                                         const NormFamily& norm,
                                         const TruncationPolicy& pol,
                                         double t_lo, double t_hi, int npts) {
    const ABParams pa(alpha, base, norm);
    const ABParams pb(beta, base, norm);

    auto abr = [&](const PowerSum& g, const ABParams& p) {
        return abr_derivative_series(g, p, pol, t_hi).first;
    };
    auto abc = [&](const PowerSum& g, const ABParams& p) {
        return abc_derivative_series(g, p, pol, t_hi).first;
    };

    IdentityReport rep{};
    rep.integral_after_abr =
        max_residual(ab_integral(abr(f, pa), pa), f, t_lo, t_hi, npts);
    rep.abr_after_integral =
        max_residual(abr(ab_integral(f, pa), pa), f, t_lo, t_hi, npts);

    PowerSum shifted = f - PowerSum::constant(f.base(), f.eval(f.base()));
    rep.newton_leibniz =
        max_residual(ab_integral(abc(f, pa), pa), shifted, t_lo, t_hi, npts);

    rep.commute_dd = max_residual(abr(abr(f, pb), pa), abr(abr(f, pa), pb),
                                  t_lo, t_hi, npts);
    rep.commute_ii =
        max_residual(ab_integral(ab_integral(f, pb), pa),
                     ab_integral(ab_integral(f, pa), pb), t_lo, t_hi, npts);
    rep.commute_di = max_residual(abr(ab_integral(f, pb), pa),
                                  ab_integral(abr(f, pa), pb), t_lo, t_hi, npts);
    return rep;
}

} // namespace mlk
