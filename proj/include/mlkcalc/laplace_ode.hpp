#pragma once

#include "mlkcalc/ab_ops.hpp"
#include "mlkcalc/funcmodel.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace mlk {

using Cplx = std::complex<double>;

// Laplace-domain multiplier of one operator; defined on Re(s) > 0 with the
// principal branch of s^alpha.
struct TransferFn {
    enum class Tag { abr, abc, rl, user };
    std::function<Cplx(Cplx)> fn;
    Tag tag = Tag::user;
    Cplx operator()(Cplx s) const;
};

// B/(1-a) * s^a / (s^a + a/(1-a))
TransferFn abr_transfer(const ABParams& p);
// B/(1-a) * s^{a-1} / (s^a + a/(1-a)); callers apply it to (s f^ - f(0))
TransferFn abc_transfer(const ABParams& p);

// Fixed-Talbot inversion with m nodes and contour radius r = 2m/(5t).
// Throws OscillationError when node terms grow toward the end of the contour
// instead of decaying.  The default m = 32 balances the contour's e^{2m/5}
// head factor against double-precision roundoff (~1e-10 floor); larger m
// amplifies cancellation instead of helping.
double talbot_invert(const std::function<Cplx(Cplx)>& F, double t, int m = 32);

// ---- linear ODE families ----------------------------------------------------
//
// All four families live at base point 0 with constant coefficient A:
//   ODE2:  ABR D^a f - A f = g   (general A, k = (1-a)A/B != 1)
//   ODE1:  ABR D^a f - B/(1-a) f = g   (the degenerate k = 1 case)
//   ODE5:  ABC D^a f - A f = g   (general A, initial value f(0))
//   ODE4:  ABC D^a f - B/(1-a) f = g   (degenerate, with a t^{-a} layer)
// ABR families assume vanishing initial memory (the delta-weighted term in
// the forcing is zero); a non-zero weight adds its closed-form kernel part
// and flags the base node, which carries the non-representable delta spike.

enum class ODEFamily { ode1, ode2, ode4, ode5 };

struct LinearODESpec {
    ODEFamily family = ODEFamily::ode2;
    double alpha = 0.5;
    double A = 0.0; // ignored for ODE1/ODE4 where A = B/(1-a) by definition
    FuncModel g;
    double f0 = 0.0;                    // ABC families only
    double initial_memory_weight = 0.0; // ABR ODE2 only
    NormFamily norm;

    double coefficient() const; // A, or B/(1-a) for the degenerate families
    double k() const;           // (1-a) A / B(a)
};

struct GridSpec {
    double b = 1.0;
    int n = 129;
    // base point is always 0: the Laplace machinery transforms from 0+
};

struct LinearSolveInfo {
    double f0_requested = 0.0;
    double f0_formula = 0.0;  // value the closed formula takes at t -> 0+
    bool f0_mismatch = false; // ODE5 with k != 0: formula gives f0/(1-k)
    int terms_used = 0;
};

SampledFn solve_linear(const LinearODESpec& spec, const GridSpec& grid,
                       LinearSolveInfo* info = nullptr,
                       const TruncationPolicy& pol = {});

// Sequential chain (D - A_1)(D - A_2)...f = g: the outermost factor is solved
// first and its solution becomes the forcing of the next factor.
SampledFn solve_sequential(const std::vector<LinearODESpec>& factors,
                           const FuncModel& g, const GridSpec& grid,
                           const TruncationPolicy& pol = {});

// ---- nonlinear convolution ODE: ABC D^a f - A (f * f) = g -------------------

struct NonlinearConvSpec {
    double alpha = 0.5;
    double A = 1.0; // must be non-zero
    FuncModel g;
    double f0 = 0.0;
    enum class Branch { plus, minus, automatic } branch = Branch::automatic;
    NormFamily norm;
};

// Solves the transformed quadratic for f^(s) at each Talbot node and inverts.
// The automatic branch takes the root vanishing as |s| -> infinity (minus).
SampledFn solve_nonlinear_conv(const NonlinearConvSpec& spec,
                               const GridSpec& grid, int m = 32);

// Trapezoid autoconvolution (f*f)(t_j) on the grid; used by residual checks.
std::vector<double> self_convolve(const SampledFn& f);

} // namespace mlk
