#pragma once

#include "mlkcalc/ab_ops.hpp"

#include <vector>

namespace mlk {

// One n-tuple (P_1,...,P_n) of non-negative integers with sum_i P_i = k and
// sum_i i*P_i = n; the combinatorial support of the chain rule.
struct PartitionTuple {
    int n = 0;
    int k = 0;
    std::vector<int> parts;
};

// Complete, duplicate-free enumeration, cached per (n, k).
const std::vector<PartitionTuple>& enumerate_partitions(int n, int k);

// Generalized binomial coefficient as the falling-factorial product
// prod_{j=0}^{n-1}(x-j) / n!, which never touches gamma poles.
double generalized_binomial(double x, int n);

// Truncation depths of the two nested sums in both rules: series_cap bounds
// the index carrying (-a/(1-a))^j from the operator series, classical_cap
// bounds the classical derivative index.
struct RuleTruncation {
    int series_cap = 40;
    int classical_cap = 12;
};

// One term's contribution at the recording point (debug CSV support).
struct TermRecord {
    int m = 0;
    int n = 0;
    int k = 0;
    double contribution = 0.0;
};

// Product rule for ABR derivatives:
//   D^a(u v)(t) = sum_m v^(m)(t) * [ front * sum_n kc^n binom(-na, m)
//                                    I^{a n + m} u(t) ].
// u enters exactly (power sum); v supplies exact derivatives.  When debug is
// non-null, per-(m, n) contributions at t = b are appended.
SampledFn product_rule(const PowerSum& u, const SmoothFn& v, const ABParams& p,
                       const RuleTruncation& trunc, double b, int npts,
                       std::vector<TermRecord>* debug = nullptr);

// The inner bracket at classical index m, as an exact power sum; the m = 0
// bracket is the ABR derivative of u itself.
PowerSum product_rule_bracket(const PowerSum& u, const ABParams& p, int m,
                              int series_cap);

// Chain rule for ABR derivatives of f(g(t)):
//   front * [ E_a(kc (t-a)^a) f(g(t))
//             + sum_{m>=0} sum_{n>=1} kc^m binom(-ma, n)
//               (t-a)^{n+ma}/G(n+ma+1)
//               * sum_{k=1}^n f^(k)(g(t)) sum_partitions n!/prod(P_i! i!^P_i)
//                 prod_i g^(i)(t)^{P_i} ].
SampledFn chain_rule(const SmoothFn& f, const SmoothFn& g, const ABParams& p,
                     const RuleTruncation& trunc, double b, int npts,
                     std::vector<TermRecord>* debug = nullptr);

// The Faa di Bruno inner sum sum_{k=1}^n f^(k)(g(t)) * partition weights,
// exposed for coefficient-level checks.
double chain_rule_inner(const SmoothFn& f, const SmoothFn& g, int n, double t);

} // namespace mlk
