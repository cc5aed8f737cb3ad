#include "mlkcalc/funcmodel.hpp"

#include "mlkcalc/specialfn.hpp"

#include <algorithm>
#include <cmath>

namespace mlk {

PowerSum::PowerSum(double base, std::vector<PowerTerm> terms) : base_(base) {
    for (const auto& t : terms) {
        if (!(t.expo > -1.0))
            throw DomainError("PowerSum: exponents must be > -1");
        if (!std::isfinite(t.coef) || !std::isfinite(t.expo))
            throw DomainError("PowerSum: terms must be finite");
    }
    std::sort(terms.begin(), terms.end(),
              [](const PowerTerm& x, const PowerTerm& y) { return x.expo < y.expo; });
    for (const auto& t : terms) {
        if (!terms_.empty() && std::fabs(terms_.back().expo - t.expo) <= kExpoMergeTol) {
            terms_.back().coef += t.coef;
        } else {
            terms_.push_back(t);
        }
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const PowerTerm& t) { return t.coef == 0.0; }),
                 terms_.end());
}

PowerSum PowerSum::monomial(double base, double coef, double expo) {
    return PowerSum(base, {{coef, expo}});
}

PowerSum PowerSum::constant(double base, double value) {
    return PowerSum(base, {{value, 0.0}});
}

double PowerSum::eval(double t) const {
    if (t < base_) throw DomainError("PowerSum::eval: t < base");
    const double u = t - base_;
    double acc = 0.0;
    for (const auto& term : terms_) {
        acc += term.coef * ((term.expo == 0.0) ? 1.0 : std::pow(u, term.expo));
    }
    return acc;
}

double PowerSum::abs_eval(double T) const {
    if (T < base_) throw DomainError("PowerSum::abs_eval: T < base");
    const double u = T - base_;
    double acc = 0.0;
    for (const auto& term : terms_)
        acc += std::fabs(term.coef) * ((term.expo == 0.0) ? 1.0 : std::pow(u, term.expo));
    return acc;
}

PowerSum PowerSum::scaled(double c) const {
    std::vector<PowerTerm> out = terms_;
    for (auto& t : out) t.coef *= c;
    return PowerSum(base_, std::move(out));
}

PowerSum PowerSum::derivative() const {
    std::vector<PowerTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.expo == 0.0) continue;
        if (!(t.expo > 0.0))
            throw DomainError("PowerSum::derivative: non-integrable derivative "
                              "(exponent would drop to <= -1)");
        out.push_back({t.coef * t.expo, t.expo - 1.0});
    }
    return PowerSum(base_, std::move(out));
}

PowerSum PowerSum::operator+(const PowerSum& other) const {
    if (base_ != other.base_)
        throw DomainError("PowerSum: mismatched base points");
    std::vector<PowerTerm> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return PowerSum(base_, std::move(out));
}

PowerSum PowerSum::operator-(const PowerSum& other) const {
    return *this + other.scaled(-1.0);
}

SmoothFn to_smooth(const PowerSum& f) {
    SmoothFn s;
    s.eval = [f](double t) { return f.eval(t); };
    s.deriv = [f](int k, double t) {
        if (k == 0) return f.eval(t);
        const double u = t - f.base();
        double acc = 0.0;
        for (const auto& term : f.terms()) {
            double fall = 1.0;
            for (int j = 0; j < k; ++j) fall *= term.expo - j;
            if (fall == 0.0) continue;
            acc += term.coef * fall * std::pow(u, term.expo - k);
        }
        return acc;
    };
    return s;
}

SmoothFn smooth_exp(double rate) {
    SmoothFn s;
    s.eval = [rate](double t) { return std::exp(rate * t); };
    s.deriv = [rate](int k, double t) {
        return std::pow(rate, k) * std::exp(rate * t);
    };
    return s;
}

namespace {

SampledFn sample_impl(const std::function<double(double)>& f, double a,
                      double b, int n) {
    if (!(b > a)) throw DomainError("sample: requires b > a");
    if (n < 2) throw DomainError("sample: requires n >= 2");
    SampledFn out;
    out.a = a;
    out.b = b;
    out.values.resize(n);
    const double h = (b - a) / (n - 1);
    for (int j = 0; j < n; ++j) out.values[j] = f(a + j * h);
    // exact endpoints regardless of rounding in a + j*h
    out.values[0] = f(a);
    out.values[n - 1] = f(b);
    return out;
}

} // namespace

SampledFn sample(const PowerSum& f, double a, double b, int n) {
    return sample_impl([&f](double t) { return f.eval(t); }, a, b, n);
}

SampledFn sample(const SmoothFn& f, double a, double b, int n) {
    return sample_impl(f.eval, a, b, n);
}

SampledFn sample(const std::function<double(double)>& f, double a, double b, int n) {
    return sample_impl(f, a, b, n);
}

FuncModel FuncModel::power(PowerSum p) {
    FuncModel m;
    m.kind = Kind::power_sum;
    m.ps = std::move(p);
    return m;
}

FuncModel FuncModel::exponential(double rate) {
    FuncModel m;
    m.kind = Kind::exponential;
    m.rate = rate;
    return m;
}

double FuncModel::eval(double t) const {
    return kind == Kind::power_sum ? ps.eval(t) : std::exp(rate * t);
}

SmoothFn FuncModel::smooth() const {
    return kind == Kind::power_sum ? to_smooth(ps) : smooth_exp(rate);
}

SampledFn FuncModel::sample(double a, double b, int n) const {
    return kind == Kind::power_sum ? mlk::sample(ps, a, b, n)
                                   : mlk::sample(smooth_exp(rate), a, b, n);
}

std::complex<double> FuncModel::laplace(std::complex<double> s) const {
    if (kind == Kind::exponential) return 1.0 / (s - rate);
    if (ps.base() != 0.0)
        throw DomainError("FuncModel::laplace: power sum must be based at 0");
    std::complex<double> acc = 0.0;
    for (const auto& term : ps.terms())
        acc += term.coef * gamma(term.expo + 1.0) * std::pow(s, -term.expo - 1.0);
    return acc;
}

} // namespace mlk
