#include "mlkcalc/rl_ops.hpp"

#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace mlk::rl {

namespace {

// d^{p} for d = 0..n, cached per (p, n).  Shared by the quadrature weights of
// every series term, so concurrent readers are common; insertion is guarded.
class PowerTableCache {
public:
    std::shared_ptr<const std::vector<double>> get(double p, int n) {
        const Key key{p, n};
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto table = std::make_shared<std::vector<double>>(n + 1);
        for (int d = 0; d <= n; ++d) (*table)[d] = std::pow(double(d), p);
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = cache_.emplace(key, std::move(table));
        return it->second;
    }

private:
    using Key = std::pair<double, int>;
    std::mutex mu_;
    std::map<Key, std::shared_ptr<const std::vector<double>>> cache_;
};

PowerTableCache& power_tables() {
    static PowerTableCache cache;
    return cache;
}

} // namespace

PowerSum integral(const PowerSum& f, double mu) {
    if (!(mu > 0.0)) throw DomainError("rl::integral: mu must be > 0");
    std::vector<PowerTerm> out;
    out.reserve(f.terms().size());
    for (const auto& term : f.terms()) {
        const double coef = term.coef * gamma_ratio(term.expo + 1.0, term.expo + mu + 1.0);
        out.push_back({coef, term.expo + mu});
    }
    return PowerSum(f.base(), std::move(out));
}

SampledFn integral(const SampledFn& f, double mu) {
    if (!(mu > 0.0)) throw DomainError("rl::integral: mu must be > 0");
    const int n = f.n();
    if (n < 2) throw DomainError("rl::integral: grid too small");
    const double h = f.h();
    auto pw = power_tables().get(mu + 1.0, n); // d^{mu+1}
    const auto& p = *pw;
    const double scale = std::pow(h, mu) / gamma(mu + 2.0);

    SampledFn out;
    out.a = f.a;
    out.b = f.b;
    out.values.assign(n, 0.0);
    for (int m = 1; m < n; ++m) {
        // I(t_m) = scale * [ b_m f_0 + sum_{j=1}^{m-1} c_{m-j} f_j + f_m ],
        // c_d = (d+1)^{mu+1} - 2 d^{mu+1} + (d-1)^{mu+1},
        // b_m = (m-1)^{mu+1} - m^{mu+1} + (mu+1) m^mu.
        double acc = f.values[m];
        const double bm = p[m - 1] - p[m] + (mu + 1.0) * std::pow(double(m), mu);
        acc += bm * f.values[0];
        for (int j = 1; j < m; ++j) {
            const int d = m - j;
            acc += (p[d + 1] - 2.0 * p[d] + p[d - 1]) * f.values[j];
        }
        out.values[m] = scale * acc;
    }
    return out;
}

PowerSum derivative(const PowerSum& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("rl::derivative: alpha must lie in (0, 1)");
    std::vector<PowerTerm> out;
    out.reserve(f.terms().size());
    for (const auto& term : f.terms()) {
        const double coef =
            term.coef * gamma(term.expo + 1.0) * recip_gamma(term.expo - alpha + 1.0);
        if (coef == 0.0) continue; // (t-a)^{alpha-1}-type terms annihilate
        if (!(term.expo - alpha > -1.0))
            throw DomainError("rl::derivative: result exponent <= -1");
        out.push_back({coef, term.expo - alpha});
    }
    return PowerSum(f.base(), std::move(out));
}

SampledFn caputo(const SampledFn& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("rl::caputo: alpha must lie in (0, 1)");
    const int n = f.n();
    if (n < 2) throw DomainError("rl::caputo: grid too small");
    const double h = f.h();
    auto pw = power_tables().get(1.0 - alpha, n); // d^{1-alpha}
    const auto& p = *pw;
    const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);

    SampledFn out;
    out.a = f.a;
    out.b = f.b;
    out.values.assign(n, 0.0);
    for (int m = 1; m < n; ++m) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j)
            acc += (f.values[j + 1] - f.values[j]) * (p[m - j] - p[m - j - 1]);
        out.values[m] = scale * acc;
    }
    return out;
}

SampledFn derivative(const SampledFn& f, double alpha) {
    SampledFn out = caputo(f, alpha);
    const double f0 = f.values[0];
    if (f0 != 0.0) {
        const double rg1a = recip_gamma(1.0 - alpha);
        for (int m = 1; m < out.n(); ++m)
            out.values[m] += f0 * std::pow(out.t(m) - out.a, -alpha) * rg1a;
        out.values[0] = std::numeric_limits<double>::quiet_NaN();
        out.singular_at_base = true;
    }
    return out;
}

PowerSum caputo(const PowerSum& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("rl::caputo: alpha must lie in (0, 1)");
    PowerSum fp = f.derivative();
    if (fp.empty()) return fp;
    return integral(fp, 1.0 - alpha);
}

SampledFn caputo(const SmoothFn& f, double alpha, double a, double b, int n) {
    SampledFn fp = sample([&f](double t) { return f.deriv(1, t); }, a, b, n);
    return integral(fp, 1.0 - alpha);
}

} // namespace mlk::rl
