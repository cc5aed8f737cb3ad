#include "mlkcalc/laplace_ode.hpp"

#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlk {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateTol = 1e-12;
} // namespace

Cplx TransferFn::operator()(Cplx s) const {
    // Laplace-domain validity is Re(s) > 0; the expressions continue
    // analytically everywhere off the principal branch cut, which the Talbot
    // contour needs.  Reject the cut itself.
    if (s.imag() == 0.0 && !(s.real() > 0.0))
        throw DomainError("TransferFn: s on the non-positive real axis");
    return fn(s);
}

TransferFn abr_transfer(const ABParams& p) {
    const double front = p.front();
    const double c0 = p.alpha() / (1.0 - p.alpha());
    const double a = p.alpha();
    return TransferFn{
        [front, c0, a](Cplx s) {
            const Cplx sa = std::pow(s, a);
            return front * sa / (sa + c0);
        },
        TransferFn::Tag::abr};
}

TransferFn abc_transfer(const ABParams& p) {
    const double front = p.front();
    const double c0 = p.alpha() / (1.0 - p.alpha());
    const double a = p.alpha();
    return TransferFn{
        [front, c0, a](Cplx s) {
            const Cplx sa = std::pow(s, a);
            return front * (sa / s) / (sa + c0);
        },
        TransferFn::Tag::abc};
}

double talbot_invert(const std::function<Cplx(Cplx)>& F, double t, int m) {
    if (!(t > 0.0)) throw DomainError("talbot_invert: t must be > 0");
    if (m < 16) throw DomainError("talbot_invert: m must be >= 16");
    const double r = 2.0 * m / (5.0 * t);

    double sum = 0.5 * std::exp(r * t) * F(Cplx(r, 0.0)).real();
    double head_max = std::fabs(sum);
    double tail_max = 0.0;
    for (int k = 1; k < m; ++k) {
        const double theta = k * kPi / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const Cplx s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const Cplx term = std::exp(s * t) * F(s) * Cplx(1.0, sigma);
        const double re = term.real();
        if (!std::isfinite(re))
            throw OscillationError("talbot_invert: non-finite node term");
        if (k < m / 2)
            head_max = std::max(head_max, std::fabs(re));
        else if (k >= 7 * m / 8)
            tail_max = std::max(tail_max, std::fabs(re));
        sum += re;
    }
    if (tail_max > 1e3 * head_max && tail_max > 1e-12)
        throw OscillationError("talbot_invert: node terms grow along the contour");
    return sum * r / m;
}

double LinearODESpec::coefficient() const {
    if (family == ODEFamily::ode1 || family == ODEFamily::ode4)
        return norm(alpha) / (1.0 - alpha);
    return A;
}

double LinearODESpec::k() const {
    return (1.0 - alpha) * coefficient() / norm(alpha);
}

namespace {

// RL derivative of the forcing, exact where the model allows it.
SampledFn rl_derivative_of_model(const FuncModel& g, double alpha, double b,
                                 int n) {
    if (g.kind == FuncModel::Kind::power_sum) {
        PowerSum d = rl::derivative(g.ps, alpha);
        SampledFn out;
        out.a = 0.0;
        out.b = b;
        out.values.resize(n);
        const double h = b / (n - 1);
        bool singular = false;
        for (const auto& term : d.terms()) singular |= term.expo < 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == 0 && singular) {
                out.values[0] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            out.values[j] = d.eval(j * h);
        }
        out.singular_at_base = singular;
        return out;
    }
    // smooth path: I^{1-a} g' plus the g(0) correction
    SampledFn cap = rl::caputo(g.smooth(), alpha, 0.0, b, n);
    const double g0 = g.eval(0.0);
    if (g0 != 0.0) {
        const double rg = recip_gamma(1.0 - alpha);
        for (int j = 1; j < n; ++j)
            cap.values[j] += g0 * std::pow(cap.t(j), -alpha) * rg;
        cap.values[0] = std::numeric_limits<double>::quiet_NaN();
        cap.singular_at_base = true;
    }
    return cap;
}

// ODE2 / ODE5 with sampled forcing h; both share the kernel convolution.
SampledFn solve_general_sampled(ODEFamily family, double alpha, double A,
                                const NormFamily& norm, const SampledFn& h,
                                double f0, double memory_weight,
                                LinearSolveInfo* info,
                                const TruncationPolicy& pol) {
    const double B = norm(alpha);
    const double k = (1.0 - alpha) * A / B;
    if (std::fabs(1.0 - k) < kDegenerateTol)
        throw DegenerateK("solve_linear: k == 1; use the ODE1/ODE4 family");
    const double lambda = k * alpha / ((1.0 - k) * (1.0 - alpha));
    const double c_h = k / (A * (1.0 - k));
    const double c_conv = 1.0 / (A * (1.0 - k));

    const int n = h.n();
    const KernelMoments km =
        ml_kernel_dt_moments(alpha, lambda, h.h(), n - 1, pol);
    const std::vector<double> conv = convolve_moments(h.values, km);

    SampledFn out = h;
    out.singular_at_base = false;
    for (int j = 0; j < n; ++j)
        out.values[j] = c_h * h.values[j] + c_conv * conv[j];

    if (family == ODEFamily::ode5) {
        for (int j = 0; j < n; ++j) {
            const double t = out.t(j);
            const double e =
                (j == 0) ? 1.0
                         : mittag_leffler(alpha, lambda * std::pow(t, alpha), pol);
            out.values[j] += f0 / (1.0 - k) * e;
        }
    } else if (memory_weight != 0.0) {
        // closed-form part of the delta-weighted initial memory; the delta
        // spike itself lives at t = 0 and is not representable on the grid
        for (int j = 1; j < n; ++j)
            out.values[j] +=
                memory_weight * c_conv *
                mittag_leffler_kernel_dt(alpha, lambda, out.t(j), pol);
        out.values[0] = std::numeric_limits<double>::quiet_NaN();
        out.singular_at_base = true;
    }

    if (info) {
        info->f0_requested = f0;
        info->f0_formula = out.values[0];
        info->f0_mismatch =
            family == ODEFamily::ode5 &&
            std::fabs(out.values[0] - f0) > 1e-9 * (1.0 + std::fabs(f0));
    }
    return out;
}

// Degenerate families (k = 1); dg is the RL derivative of the forcing.
SampledFn assemble_degenerate(ODEFamily family, double alpha,
                              const NormFamily& norm, const SampledFn& dg,
                              const std::vector<double>& g_values, double f0) {
    const double B = norm(alpha);
    SampledFn out = dg;
    const double c_d = -(1.0 - alpha) * (1.0 - alpha) / (alpha * B);
    const double c_g = (family == ODEFamily::ode1) ? -(1.0 - alpha) / B
                                                   : (alpha - 1.0) / B;
    bool singular = dg.singular_at_base;
    for (int j = 0; j < out.n(); ++j)
        out.values[j] = c_d * dg.values[j] + c_g * g_values[j];
    if (family == ODEFamily::ode4 && f0 != 0.0) {
        const double c_layer =
            (alpha - 1.0) / alpha * recip_gamma(1.0 - alpha) * f0;
        for (int j = 1; j < out.n(); ++j)
            out.values[j] += c_layer * std::pow(out.t(j), -alpha);
        out.values[0] = std::numeric_limits<double>::quiet_NaN();
        singular = true;
    }
    out.singular_at_base = singular;
    return out;
}

SampledFn solve_linear_sampled(const LinearODESpec& spec, const SampledFn& h,
                               LinearSolveInfo* info,
                               const TruncationPolicy& pol) {
    switch (spec.family) {
        case ODEFamily::ode2:
        case ODEFamily::ode5:
            return solve_general_sampled(spec.family, spec.alpha, spec.A,
                                         spec.norm, h, spec.f0,
                                         spec.initial_memory_weight, info, pol);
        case ODEFamily::ode1:
        case ODEFamily::ode4: {
            if (spec.initial_memory_weight != 0.0)
                throw DomainError(
                    "solve_linear: the degenerate family maps initial memory "
                    "to a derivative of delta, which is not representable");
            SampledFn dg = rl::derivative(h, spec.alpha);
            return assemble_degenerate(spec.family, spec.alpha, spec.norm, dg,
                                       h.values, spec.f0);
        }
    }
    throw DomainError("solve_linear: unknown family");
}

} // namespace

SampledFn solve_linear(const LinearODESpec& spec, const GridSpec& grid,
                       LinearSolveInfo* info, const TruncationPolicy& pol) {
    if (grid.n < 2 || !(grid.b > 0.0))
        throw DomainError("solve_linear: invalid grid");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw DomainError("solve_linear: alpha must lie in (0, 1)");
    if (spec.family == ODEFamily::ode1 || spec.family == ODEFamily::ode4) {
        if (spec.initial_memory_weight != 0.0)
            throw DomainError(
                "solve_linear: the degenerate family maps initial memory to a "
                "derivative of delta, which is not representable");
        SampledFn dg = rl_derivative_of_model(spec.g, spec.alpha, grid.b, grid.n);
        std::vector<double> gv(grid.n);
        for (int j = 0; j < grid.n; ++j) gv[j] = spec.g.eval(dg.t(j));
        return assemble_degenerate(spec.family, spec.alpha, spec.norm, dg, gv,
                                   spec.f0);
    }
    SampledFn h = spec.g.sample(0.0, grid.b, grid.n);
    return solve_linear_sampled(spec, h, info, pol);
}

SampledFn solve_sequential(const std::vector<LinearODESpec>& factors,
                           const FuncModel& g, const GridSpec& grid,
                           const TruncationPolicy& pol) {
    if (factors.empty())
        throw DomainError("solve_sequential: no factors given");
    // outermost factor first; its solution is the next factor's forcing
    LinearODESpec first = factors.front();
    first.g = g;
    SampledFn current = solve_linear(first, grid, nullptr, pol);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        if (current.singular_at_base)
            throw DomainError(
                "solve_sequential: intermediate solution singular at 0; "
                "cannot be used as forcing");
        current = solve_linear_sampled(factors[i], current, nullptr, pol);
    }
    return current;
}

std::vector<double> self_convolve(const SampledFn& f) {
    const int n = f.n();
    const double h = f.h();
    std::vector<double> out(n, 0.0);
    for (int j = 1; j < n; ++j) {
        double acc = f.values[0] * f.values[j];
        for (int i = 1; i < j; ++i) acc += f.values[i] * f.values[j - i];
        out[j] = acc * h;
    }
    return out;
}

SampledFn solve_nonlinear_conv(const NonlinearConvSpec& spec,
                               const GridSpec& grid, int m) {
    if (spec.A == 0.0)
        throw DomainError("solve_nonlinear_conv: A must be non-zero");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw DomainError("solve_nonlinear_conv: alpha must lie in (0, 1)");
    const ABParams p(spec.alpha, 0.0, spec.norm);
    const TransferFn T = abr_transfer(p);
    const double A = spec.A;
    const double f0 = spec.f0;
    const FuncModel& g = spec.g;
    const bool take_minus = spec.branch != NonlinearConvSpec::Branch::plus;

    auto roots = [&](Cplx s) {
        const Cplx Ts = T(s);
        const Cplx disc = Ts * Ts - 4.0 * A * (g.laplace(s) + Ts / s * f0);
        if (std::abs(disc) < 1e-300)
            throw DiscriminantZero("solve_nonlinear_conv: discriminant vanishes");
        const Cplx sq = std::sqrt(disc);
        return std::pair<Cplx, Cplx>{(Ts - sq) / (2.0 * A),
                                     (Ts + sq) / (2.0 * A)};
    };

    if (spec.branch == NonlinearConvSpec::Branch::automatic) {
        // the automatic branch is the root vanishing as |s| -> inf; verify the
        // minus root is the small one where the contour meets the real axis
        const double r0 = 2.0 * m / (5.0 * grid.b);
        for (double s_real : {std::max(1.0, r0), 10.0 * std::max(1.0, r0)}) {
            auto [lo, hi] = roots(Cplx(s_real, 0.0));
            if (std::abs(lo) > std::abs(hi))
                throw BranchAmbiguity(
                    "solve_nonlinear_conv: minus root is not the vanishing one");
        }
    }

    auto Fhat = [&](Cplx s) {
        auto [lo, hi] = roots(s);
        return take_minus ? lo : hi;
    };

    SampledFn out;
    out.a = 0.0;
    out.b = grid.b;
    out.values.resize(grid.n);
    out.values[0] = f0;
    const double h = grid.b / (grid.n - 1);
    for (int j = 1; j < grid.n; ++j)
        out.values[j] = talbot_invert(Fhat, j * h, m);
    return out;
}

} // namespace mlk
