#include "mlkcalc/riccati.hpp"

#include "mlkcalc/specialfn.hpp"

#include <cmath>

namespace mlk {

std::vector<double> riccati_coefficients(const RiccatiSpec& spec, int M) {
    if (spec.Q == 0.0) throw DomainError("riccati: Q must be non-zero");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw DomainError("riccati: alpha must lie in (0, 1)");
    const double ratio = -spec.P / spec.Q;
    if (ratio < 0.0)
        throw ComplexRoot("riccati: -P/Q < 0, no real equilibrium");
    const double a0 = (spec.sign == RiccatiSpec::Sign::plus ? 1.0 : -1.0) *
                      std::sqrt(ratio);
    const double front = spec.front();
    const double denom = 2.0 * spec.Q * a0 - front;
    if (std::fabs(denom) < 1e-14 * (std::fabs(2.0 * spec.Q * a0) + front))
        throw DenominatorZero("riccati: 2 Q a0 == B/(1-alpha)");

    const double kc = -spec.alpha / (1.0 - spec.alpha);
    std::vector<double> a(M + 1, 0.0);
    a[0] = a0;
    for (int m = 1; m <= M; ++m) {
        double deriv_part = 0.0; // sum_{k=1}^{m-1} a_k kc^{m-k} G(ka+1)/G(ma+1)
        double quad_part = 0.0;  // sum_{k=1}^{m-1} a_k a_{m-k}
        for (int k = 1; k < m; ++k) {
            deriv_part += a[k] * std::pow(kc, m - k) *
                          gamma_ratio(k * spec.alpha + 1.0, m * spec.alpha + 1.0);
            quad_part += a[k] * a[m - k];
        }
        a[m] = (front * deriv_part - spec.Q * quad_part) / denom;
    }
    return a;
}

double riccati_eval(const RiccatiSpec& spec, const std::vector<double>& coef,
                    double t) {
    if (t < 0.0) throw DomainError("riccati_eval: t must be >= 0");
    double acc = 0.0;
    for (std::size_t k_idx = coef.size(); k_idx-- > 0;) {
        const double k = static_cast<double>(k_idx);
        const double p = (k_idx == 0) ? 1.0 : std::pow(t, k * spec.alpha);
        acc += coef[k_idx] * p;
    }
    return acc;
}

double riccati_abc_coefficient(const RiccatiSpec& spec,
                               const std::vector<double>& coef, int m) {
    if (m < 1) return 0.0;
    const double kc = -spec.alpha / (1.0 - spec.alpha);
    const int kmax = std::min<int>(m, static_cast<int>(coef.size()) - 1);
    double acc = 0.0;
    for (int k = 1; k <= kmax; ++k)
        acc += coef[k] * std::pow(kc, m - k) *
               gamma_ratio(k * spec.alpha + 1.0, m * spec.alpha + 1.0);
    return spec.front() * acc;
}

double riccati_residual(const RiccatiSpec& spec, const std::vector<double>& coef,
                        double t_lo, double t_hi, int npts, int m_cap) {
    double worst = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (npts - 1);
        double deriv = 0.0;
        for (int m = 1; m <= m_cap; ++m)
            deriv += riccati_abc_coefficient(spec, coef, m) *
                     std::pow(t, m * spec.alpha);
        const double f = riccati_eval(spec, coef, t);
        worst = std::max(worst, std::fabs(deriv - spec.P - spec.Q * f * f));
    }
    return worst;
}

} // namespace mlk
