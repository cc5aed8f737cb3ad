#include "mlkcalc/semigroup.hpp"

#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <limits>

namespace mlk {

namespace {

void validate_case(const SemigroupCase& c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0 && c.beta > 0.0 && c.beta < 1.0))
        throw DomainError("semigroup: orders must lie in (0, 1)");
    if (!(c.alpha + c.beta < 1.0))
        throw DomainError("semigroup: restricted to alpha + beta < 1");
}

} // namespace

PowerSum semigroup_defect_power(const SemigroupCase& c) {
    validate_case(c);
    const ABParams pa(c.alpha, c.f.base(), c.norm);
    const ABParams pb(c.beta, c.f.base(), c.norm);
    const ABParams pab(c.alpha + c.beta, c.f.base(), c.norm);
    return ab_integral(ab_integral(c.f, pb), pa) - ab_integral(c.f, pab);
}

SampledFn semigroup_defect(const SemigroupCase& c, double b, int n) {
    PowerSum d = semigroup_defect_power(c);
    return sample([&d](double t) { return d.eval(t); }, c.f.base(), b, n);
}

PowerSum fie_residual_power(const SemigroupCase& c) {
    validate_case(c);
    if (c.f.empty()) return c.f;
    const double a = c.alpha, b = c.beta;
    const double Ba = c.norm(a), Bb = c.norm(b), Bab = c.norm(a + b);
    const double c_ab = a * b / (Ba * Bb) - (a + b) / Bab;
    const double c_a = a * (1.0 - b) / (Ba * Bb);
    const double c_b = b * (1.0 - a) / (Ba * Bb);
    const double c_f = (1.0 - a) * (1.0 - b) / (Ba * Bb) -
                       (1.0 - a - b) / Bab;
    return rl::integral(c.f, a + b).scaled(c_ab) +
           rl::integral(c.f, a).scaled(c_a) +
           rl::integral(c.f, b).scaled(c_b) + c.f.scaled(c_f);
}

SampledFn fie_residual(const SemigroupCase& c, double b, int n) {
    PowerSum r = fie_residual_power(c);
    return sample([&r](double t) { return r.eval(t); }, c.f.base(), b, n);
}

double IndicialPoly::eval_expanded(double x) const {
    if (!(x > 0.0)) throw DomainError("indicial: x must be > 0");
    return alpha * beta * std::pow(x, alpha + beta) +
           alpha * (1.0 - beta) * std::pow(x, beta) +
           beta * (1.0 - alpha) * std::pow(x, alpha) +
           (alpha * beta - alpha - beta);
}

double IndicialPoly::eval_factored(double x) const {
    if (!(x > 0.0)) throw DomainError("indicial: x must be > 0");
    return (beta * std::pow(x, alpha) - beta + 1.0) *
               (alpha * std::pow(x, beta) - alpha + 1.0) -
           1.0;
}

std::array<double, 2> IndicialPoly::roots_y() const {
    if (!equal_orders())
        throw DomainError("indicial roots: analytic only for alpha == beta");
    return {1.0, (alpha - 2.0) / alpha};
}

IndicialPoly indicial_poly(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw DomainError("indicial_poly: orders must lie in (0, 1)");
    return IndicialPoly{alpha, beta};
}

SemigroupSolution::SemigroupSolution(int q, const TruncationPolicy& pol)
    : q_(q), alpha_(1.0 / q), pol_(pol) {
    if (q <= 2) throw DomainError("semigroup_solution: q must exceed 2");
    ratio_ = (alpha_ - 2.0) / alpha_; // 1 - 2q
    // heads of the k >= 1 ladders: coefficient of t^{-k alpha} is
    // (1/2a) [1 - r^{q-k-1}] / Gamma(1 - k alpha)  (the n = 0 series terms)
    for (int k = 1; k < q_; ++k) {
        const double c = (1.0 - std::pow(ratio_, q_ - k - 1)) / (2.0 * alpha_) *
                         recip_gamma(1.0 - k * alpha_);
        singular_.push_back({c, -k * alpha_});
    }
}

double SemigroupSolution::eval(double t) const {
    if (!(t > 0.0)) throw DomainError("semigroup_solution: t must be > 0");
    const double aq = std::pow(ratio_, q_);
    double acc = 0.0;
    for (int k = 0; k < q_; ++k) {
        acc += miller_ross(-k * alpha_, 1.0, t, pol_);
        acc -= std::pow(ratio_, q_ - k - 1) *
               miller_ross(-k * alpha_, aq, t, pol_);
    }
    return acc / (2.0 * alpha_);
}

double SemigroupSolution::bounded_eval(double t) const {
    if (t < 0.0) throw DomainError("semigroup_solution: t must be >= 0");
    const double aq = std::pow(ratio_, q_);
    double acc = 0.0;
    // k = 0 ladders are entire: E_t(0, a) = e^{a t}
    acc += (t == 0.0) ? 1.0 : miller_ross(0.0, 1.0, t, pol_);
    acc -= std::pow(ratio_, q_ - 1) *
           ((t == 0.0) ? 1.0 : miller_ross(0.0, aq, t, pol_));
    // k >= 1 ladders minus their singular heads
    for (int k = 1; k < q_; ++k) {
        acc += miller_ross_minus_head(-k * alpha_, 1.0, t, pol_);
        acc -= std::pow(ratio_, q_ - k - 1) *
               miller_ross_minus_head(-k * alpha_, aq, t, pol_);
    }
    return acc / (2.0 * alpha_);
}

SemigroupSolution semigroup_solution(int q, const TruncationPolicy& pol) {
    return SemigroupSolution(q, pol);
}

namespace {

SampledFn fde_combine(const SampledFn& d2, const SampledFn& d1,
                      const SampledFn& f, double alpha) {
    SampledFn out = f;
    const double c2 = alpha * alpha;
    const double c1 = 2.0 * alpha * (1.0 - alpha);
    const double c0 = alpha * alpha - 2.0 * alpha;
    for (int j = 0; j < out.n(); ++j)
        out.values[j] =
            c2 * d2.values[j] + c1 * d1.values[j] + c0 * f.values[j];
    out.values[0] = std::numeric_limits<double>::quiet_NaN();
    out.singular_at_base = true;
    return out;
}

} // namespace

SampledFn fde_residual(const std::function<double(double)>& f, double alpha,
                       double b, int n) {
    if (!(2.0 * alpha < 1.0))
        throw DomainError("fde_residual: needs 2*alpha < 1");
    SampledFn fs = sample(f, 0.0, b, n);
    SampledFn d1 = rl::derivative(fs, alpha);
    SampledFn d2 = rl::derivative(fs, 2.0 * alpha);
    return fde_combine(d2, d1, fs, alpha);
}

SampledFn fde_residual(const SemigroupSolution& sol, double b, int n) {
    const double alpha = sol.alpha();
    if (!(2.0 * alpha < 1.0))
        throw DomainError("fde_residual: needs 2*alpha < 1");
    // bounded remainder through the grid scheme
    SampledFn fb = sample([&sol](double t) { return sol.bounded_eval(t); },
                          0.0, b, n);
    SampledFn d1 = rl::derivative(fb, alpha);
    SampledFn d2 = rl::derivative(fb, 2.0 * alpha);
    SampledFn out = fde_combine(d2, d1, fb, alpha);
    // singular monomials exactly: D^mu t^nu = G(nu+1)/G(nu+1-mu) t^{nu-mu}
    for (const auto& term : sol.singular_terms()) {
        const double g1 = gamma(term.expo + 1.0);
        const double r2 = recip_gamma(term.expo + 1.0 - 2.0 * alpha);
        const double r1 = recip_gamma(term.expo + 1.0 - alpha);
        for (int j = 1; j < out.n(); ++j) {
            const double t = out.t(j);
            const double d2s = term.coef * g1 * r2 * std::pow(t, term.expo - 2.0 * alpha);
            const double d1s = term.coef * g1 * r1 * std::pow(t, term.expo - alpha);
            const double fs = term.coef * std::pow(t, term.expo);
            out.values[j] += alpha * alpha * d2s +
                             2.0 * alpha * (1.0 - alpha) * d1s +
                             (alpha * alpha - 2.0 * alpha) * fs;
        }
    }
    return out;
}

} // namespace mlk
