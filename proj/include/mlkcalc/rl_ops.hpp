#pragma once

#include "mlkcalc/funcmodel.hpp"

namespace mlk::rl {

// RL integral I^mu, mu > 0, base = f.base(): power rule
//   c (t-a)^b  ->  c * Gamma(b+1)/Gamma(b+mu+1) * (t-a)^{b+mu}.
PowerSum integral(const PowerSum& f, double mu);

// RL integral on a uniform grid via the product-trapezoidal scheme: the
// singular kernel is integrated exactly against the piecewise-linear
// interpolant of f, giving O(h^2).  Weights are cached per (mu, n).
// Output value at t_0 is 0.
SampledFn integral(const SampledFn& f, double mu);

// RL derivative D^alpha, alpha in (0,1).  Power-sum path uses the power rule
// through recip_gamma, so terms of the form (t-a)^{alpha-1} vanish cleanly.
PowerSum derivative(const PowerSum& f, double alpha);

// Grid path: L1 Caputo scheme plus the correction f(a)(t-a)^{-alpha}/G(1-alpha).
// When f(a) != 0 the output at t_0 diverges and is stored as a flagged NaN.
SampledFn derivative(const SampledFn& f, double alpha);

// Caputo derivative: I^{1-alpha} applied to f'.
PowerSum caputo(const PowerSum& f, double alpha);
SampledFn caputo(const SampledFn& f, double alpha); // L1 scheme
// Quadrature of the exact derivative of a smooth function on [a, b].
SampledFn caputo(const SmoothFn& f, double alpha, double a, double b, int n);

} // namespace mlk::rl
