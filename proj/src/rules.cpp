#include "mlkcalc/rules.hpp"

#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace mlk {

namespace {

void extend_partitions(int remaining, int k_left, int max_part, int n,
                       std::vector<int>& parts,
                       std::vector<PartitionTuple>& out) {
    if (remaining == 0) {
        if (k_left == 0) {
            PartitionTuple tuple;
            tuple.n = n;
            tuple.parts = parts;
            for (std::size_t i = 0; i < parts.size(); ++i)
            {
                tuple.k += parts[i];
            }
            out.push_back(std::move(tuple));
        }
        return;
    }
    if (k_left <= 0 || max_part <= 0) return;
    // choose the multiplicity of part size max_part
    for (int count = 0; count * max_part <= remaining && count <= k_left;
         ++count) {
        parts[max_part - 1] = count;
        extend_partitions(remaining - count * max_part, k_left - count,
                          max_part - 1, n, parts, out);
    }
    parts[max_part - 1] = 0;
}

class PartitionCache {
public:
    const std::vector<PartitionTuple>& get(int n, int k) {
        const auto key = std::make_pair(n, k);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return *it->second;
        }
        auto fresh = std::make_unique<std::vector<PartitionTuple>>();
        std::vector<int> parts(n, 0);
        extend_partitions(n, k, n, n, parts, *fresh);
        for (auto& tuple : *fresh) tuple.k = k;
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = cache_.emplace(key, std::move(fresh));
        return *it->second;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, std::unique_ptr<std::vector<PartitionTuple>>>
        cache_;
};

PartitionCache& partition_cache() {
    static PartitionCache cache;
    return cache;
}

double factorial(int n) {
    double acc = 1.0;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// n! / prod_i (P_i! * (i!)^{P_i})
double faa_di_bruno_weight(const PartitionTuple& tuple) {
    double denom = 1.0;
    for (std::size_t i = 0; i < tuple.parts.size(); ++i) {
        const int count = tuple.parts[i];
        if (count == 0) continue;
        denom *= factorial(count) * std::pow(factorial(static_cast<int>(i) + 1),
                                             count);
    }
    return factorial(tuple.n) / denom;
}

} // namespace

const std::vector<PartitionTuple>& enumerate_partitions(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw DomainError("enumerate_partitions: need 1 <= k <= n");
    return partition_cache().get(n, k);
}

double generalized_binomial(double x, int n) {
    if (n < 0) throw DomainError("generalized_binomial: n must be >= 0");
    double acc = 1.0;
    for (int j = 0; j < n; ++j) acc *= (x - j) / (j + 1);
    return acc;
}

PowerSum product_rule_bracket(const PowerSum& u, const ABParams& p, int m,
                              int series_cap) {
    const double kc = p.kernel_coef();
    PowerSum acc;
    double weight = p.front();
    for (int n = 0; n <= series_cap; ++n) {
        const double mu = n * p.alpha() + m;
        const PowerSum term = (mu == 0.0) ? u : rl::integral(u, mu);
        const double c = weight * generalized_binomial(-n * p.alpha(), m);
        if (c != 0.0)
            acc = acc.empty() ? term.scaled(c) : acc + term.scaled(c);
        weight *= kc;
    }
    return acc;
}

SampledFn product_rule(const PowerSum& u, const SmoothFn& v, const ABParams& p,
                       const RuleTruncation& trunc, double b, int npts,
                       std::vector<TermRecord>* debug) {
    if (!(b > p.base())) throw DomainError("product_rule: b must exceed base");
    SampledFn out;
    out.a = p.base();
    out.b = b;
    out.values.assign(npts, 0.0);

    for (int m = 0; m <= trunc.classical_cap; ++m) {
        const PowerSum bracket = product_rule_bracket(u, p, m, trunc.series_cap);
        for (int j = 0; j < npts; ++j) {
            const double t = out.t(j);
            out.values[j] += v.deriv(m, t) * bracket.eval(t);
        }
        if (debug) {
            // per-(m, n) contributions at the last grid point
            const double t = out.t(npts - 1);
            const double vm = v.deriv(m, t);
            double weight = p.front();
            for (int n = 0; n <= trunc.series_cap; ++n) {
                const double mu = n * p.alpha() + m;
                const PowerSum term = (mu == 0.0) ? u : rl::integral(u, mu);
                debug->push_back(
                    {m, n, 0,
                     vm * weight * generalized_binomial(-n * p.alpha(), m) *
                         term.eval(t)});
                weight *= p.kernel_coef();
            }
        }
    }
    return out;
}

double chain_rule_inner(const SmoothFn& f, const SmoothFn& g, int n, double t) {
    const double gt = g.eval(t);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double fk = f.deriv(k, gt);
        if (fk == 0.0) continue;
        double part_sum = 0.0;
        for (const auto& tuple : enumerate_partitions(n, k)) {
            double prod = faa_di_bruno_weight(tuple);
            for (std::size_t i = 0; i < tuple.parts.size(); ++i) {
                const int count = tuple.parts[i];
                if (count == 0) continue;
                prod *= std::pow(g.deriv(static_cast<int>(i) + 1, t), count);
            }
            part_sum += prod;
        }
        acc += fk * part_sum;
    }
    return acc;
}

SampledFn chain_rule(const SmoothFn& f, const SmoothFn& g, const ABParams& p,
                     const RuleTruncation& trunc, double b, int npts,
                     std::vector<TermRecord>* debug) {
    if (!(b > p.base())) throw DomainError("chain_rule: b must exceed base");
    const double kc = p.kernel_coef();
    const double front = p.front();
    const double a = p.base();

    SampledFn out;
    out.a = a;
    out.b = b;
    out.values.assign(npts, 0.0);

    // inner Faa di Bruno sums are independent of the series index m
    std::vector<std::vector<double>> inner(trunc.classical_cap + 1,
                                           std::vector<double>(npts, 0.0));
    for (int n = 1; n <= trunc.classical_cap; ++n)
        for (int j = 0; j < npts; ++j)
            inner[n][j] = chain_rule_inner(f, g, n, out.t(j));

    for (int j = 0; j < npts; ++j) {
        const double t = out.t(j);
        const double u = t - a;
        const double lead =
            ((j == 0) ? 1.0
                      : mittag_leffler(p.alpha(), kc * std::pow(u, p.alpha()))) *
            f.eval(g.eval(t));
        // Kahan accumulation over the alternating kc^m ladder
        double sum = lead, comp = 0.0;
        double wm = 1.0;
        for (int m = 0; m <= trunc.series_cap; ++m) {
            for (int n = 1; n <= trunc.classical_cap; ++n) {
                if (u == 0.0) continue;
                const double term =
                    wm * generalized_binomial(-m * p.alpha(), n) *
                    std::pow(u, n + m * p.alpha()) *
                    recip_gamma(n + m * p.alpha() + 1.0) * inner[n][j];
                const double y = term - comp;
                const double s = sum + y;
                comp = (s - sum) - y;
                sum = s;
                if (debug && j == npts - 1)
                    debug->push_back({m, n, 0, front * term});
            }
            wm *= kc;
        }
        out.values[j] = front * sum;
    }
    return out;
}

} // namespace mlk
