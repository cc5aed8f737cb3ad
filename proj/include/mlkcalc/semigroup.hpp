#pragma once

#include "mlkcalc/ab_ops.hpp"

#include <array>
#include <functional>
#include <vector>

namespace mlk {

// One composition experiment AB I^a (AB I^b f) vs AB I^{a+b} f.  Restricted
// to alpha + beta < 1 so every operator stays inside the (0,1) machinery.
struct SemigroupCase {
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    NormFamily norm;
    PowerSum f;
};

// Pointwise AB I^a(AB I^b f) - AB I^{a+b} f, exact on the power-sum carrier.
PowerSum semigroup_defect_power(const SemigroupCase& c);
SampledFn semigroup_defect(const SemigroupCase& c, double b, int n);

// The fractional-integral-equation residual whose vanishing is equivalent to
// the semigroup property:
//   [ab/(BaBb) - (a+b)/B(a+b)] I^{a+b} f + a(1-b)/(BaBb) I^a f
//   + b(1-a)/(BaBb) I^b f + [(1-a)(1-b)/(BaBb) - (1-a-b)/B(a+b)] f.
PowerSum fie_residual_power(const SemigroupCase& c);
SampledFn fie_residual(const SemigroupCase& c, double b, int n);

// Indicial polynomial of the order-(a+b) equation derived from the semigroup
// condition, in both printed forms.
struct IndicialPoly {
    double alpha = 0.0;
    double beta = 0.0;

    // a b x^{a+b} + a(1-b) x^b + b(1-a) x^a + (a b - a - b)
    double eval_expanded(double x) const;
    // (b x^a - b + 1)(a x^b - a + 1) - 1
    double eval_factored(double x) const;

    bool equal_orders() const { return alpha == beta; }
    // roots in y = x^a for the alpha == beta case: {1, (a-2)/a}
    std::array<double, 2> roots_y() const;
};

IndicialPoly indicial_poly(double alpha, double beta);

// The Miller-Ross solution family of the simplified order-2a equation at
// alpha = 1/q:
//   f(t) = 1/(2a) sum_{k<q} E_t(-ka, 1)
//        - 1/(2a) sum_{k<q} r^{q-k-1} E_t(-ka, r^q),   r = (a-2)/a.
// The k >= 1 ladders carry t^{-ka} heads, so f splits into an exactly-known
// singular part and a continuous remainder for grid work.  The k = q-1 head
// cancels identically (weight 1 - r^0), leaving t^{-(q-2)/q} as the leading
// blowup.  For even q the sign of r^q flips positive and the two ladders
// cancel at e^{|r|^q t} scale, so double precision only resolves
// |r|^q t up to a few dozen; odd q (the paper's worked case) is
// well-conditioned at desk scale throughout.
class SemigroupSolution {
public:
    SemigroupSolution(int q, const TruncationPolicy& pol = {});

    int q() const { return q_; }
    double alpha() const { return alpha_; }
    double root_ratio() const { return ratio_; }

    double eval(double t) const; // t > 0
    // singular monomials c_k t^{-k alpha}, k = 1..q-1
    const std::vector<PowerTerm>& singular_terms() const { return singular_; }
    // f minus the singular monomials; continuous on [0, inf)
    double bounded_eval(double t) const;

private:
    int q_;
    double alpha_;
    double ratio_;
    TruncationPolicy pol_;
    std::vector<PowerTerm> singular_;
};

SemigroupSolution semigroup_solution(int q, const TruncationPolicy& pol = {});

// Pointwise residual of  a^2 D^{2a} f + 2a(1-a) D^a f + (a^2 - 2a) f  on the
// grid [0, b], RL derivatives based at 0.  The generic overload handles any
// continuous f; the SemigroupSolution overload differentiates the singular
// monomials exactly and only the bounded remainder goes through the grid
// scheme.  The base node is flagged.
SampledFn fde_residual(const std::function<double(double)>& f, double alpha,
                       double b, int n);
SampledFn fde_residual(const SemigroupSolution& sol, double b, int n);

} // namespace mlk
