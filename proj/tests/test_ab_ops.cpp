#include "doctest.h"

#include "mlkcalc/ab_ops.hpp"
#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <vector>

using namespace mlk;

namespace {

const TruncationPolicy kTight{1e-14, 1e-14, 10000};

double max_diff_from(const SampledFn& a, const SampledFn& b, double t_from) {
    double worst = 0.0;
    for (int j = 0; j < a.n(); ++j) {
        if (a.t(j) < t_from) continue;
        worst = std::max(worst, std::fabs(a.values[j] - b.values[j]));
    }
    return worst;
}

} // namespace

TEST_CASE("ABParams rejects degenerate orders") {
    CHECK_THROWS_AS(ABParams(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(ABParams(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ABParams(-0.2, 0.0), DomainError);
    CHECK_THROWS_AS(ABParams(1.7, 0.0), DomainError);
    ABParams p(0.5, 0.0);
    CHECK(p.b_value() == 1.0);
    CHECK(p.front() == doctest::Approx(2.0));
    CHECK(p.kernel_coef() == doctest::Approx(-1.0));
    ABParams q(0.5, 0.0, NormFamily::exponential(0.4));
    CHECK(q.b_value() == doctest::Approx(std::exp(0.2)));
}

TEST_CASE("ABR kernel path on f = 1 reproduces the closed form") {
    // ABR D^alpha(1) = B/(1-a) E_alpha(-a/(1-a) (t-a)^alpha); for f == 1 the
    // moment quadrature telescopes, so agreement is near machine level.
    for (double alpha : {0.3, 0.5, 0.7}) {
        ABParams p(alpha, 0.0);
        SampledFn one = sample(PowerSum::constant(0.0, 1.0), 0.0, 2.0, 257);
        SampledFn d = abr_derivative_kernel(one, p);
        for (int j = 0; j < d.n(); ++j) {
            const double t = d.t(j);
            const double expected =
                p.front() *
                ((j == 0) ? 1.0
                          : mittag_leffler(alpha, p.kernel_coef() *
                                                      std::pow(t, alpha)));
            CHECK(d.values[j] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("ABR kernel at alpha=1/2, t=1 equals the erfc oracle") {
    ABParams p(0.5, 0.0);
    SampledFn one = sample(PowerSum::constant(0.0, 1.0), 0.0, 1.0, 129);
    SampledFn d = abr_derivative_kernel(one, p);
    const double expected = 2.0 * std::exp(1.0) * std::erfc(1.0);
    CHECK(expected == doctest::Approx(0.85516715231161400882).epsilon(1e-13));
    CHECK(d.values[128] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("ABR of zero is zero (both paths)") {
    ABParams p(0.4, 0.0);
    SampledFn z = sample(PowerSum(), 0.0, 1.0, 65);
    SampledFn dk = abr_derivative_kernel(z, p);
    for (double v : dk.values) CHECK(v == 0.0);
    auto [ds, rep] = abr_derivative_series(z, p);
    for (double v : ds.values) CHECK(v == 0.0);
    auto [dp, rep2] = abr_derivative_series(PowerSum(), p, kTight, 1.0);
    CHECK(dp.empty());
}

TEST_CASE("ABR series on f = 1 equals front * E_alpha") {
    for (double alpha : {0.3, 0.5, 0.7}) {
        ABParams p(alpha, 0.0);
        auto [d, rep] =
            abr_derivative_series(PowerSum::constant(0.0, 1.0), p, kTight, 2.0);
        for (double t : {0.1, 0.5, 1.0, 1.7, 2.0}) {
            const double expected =
                p.front() *
                mittag_leffler(alpha, p.kernel_coef() * std::pow(t, alpha));
            CHECK(d.eval(t) == doctest::Approx(expected).epsilon(1e-10));
        }
        CHECK(rep.terms_used > 3);
    }
}

TEST_CASE("ABR series of t^3 has the expected term ladder") {
    const double alpha = 0.6;
    ABParams p(alpha, 0.0);
    auto [d, rep] =
        abr_derivative_series(PowerSum::monomial(0.0, 1.0, 3.0), p, kTight, 2.0);
    const auto& terms = d.terms();
    REQUIRE(terms.size() >= 5);
    // term n: front * kc^n * 6 / Gamma(4 + alpha n) * t^{3 + alpha n}
    for (int n = 0; n < 5; ++n) {
        CHECK(terms[n].expo == doctest::Approx(3.0 + alpha * n));
        const double expect = p.front() * std::pow(p.kernel_coef(), n) * 6.0 *
                              recip_gamma(4.0 + alpha * n);
        CHECK(terms[n].coef == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("path agreement: kernel vs series ABR") {
    const int n = 513;
    const double b = 2.0;
    const double h = b / (n - 1);
    const double tol = std::max(1e-6, 10.0 * h * h);
    std::vector<SampledFn> inputs = {
        sample(PowerSum::constant(0.0, 1.0), 0.0, b, n),
        sample(PowerSum::monomial(0.0, 1.0, 1.0), 0.0, b, n),
        sample(PowerSum::monomial(0.0, 1.0, 2.0), 0.0, b, n),
        sample(smooth_exp(1.0), 0.0, b, n),
    };
    for (double alpha : {0.2, 0.5, 0.8}) {
        ABParams p(alpha, 0.0);
        for (const auto& f : inputs) {
            SampledFn k = abr_derivative_kernel(f, p);
            auto [s, rep] = abr_derivative_series(f, p);
            CHECK(max_diff_from(k, s, 0.05) < tol);
        }
    }
}

TEST_CASE("ABC of a constant vanishes on every path") {
    ABParams p(0.45, 0.0);
    auto [dp, r1] =
        abc_derivative_series(PowerSum::constant(0.0, 3.5), p, kTight, 2.0);
    CHECK(dp.empty());
    SampledFn dk = abc_derivative_kernel(to_smooth(PowerSum::constant(0.0, 3.5)),
                                         p, 0.0, 2.0, 65);
    for (double v : dk.values) CHECK(v == 0.0);
    // sampled-path identity variant
    SampledFn c = sample(PowerSum::constant(0.0, 3.5), 0.0, 2.0, 65);
    SampledFn di = abc_derivative_kernel(c, p);
    for (double v : di.values) CHECK(std::fabs(v) < 1e-12);
}

TEST_CASE("ABC series of t matches the kernel quadrature oracle") {
    // alpha = 1/2, B == 1: 2 sum_n (-1)^n t^{1+n/2} / Gamma(2 + n/2)
    ABParams p(0.5, 0.0);
    auto [ds, rep] =
        abc_derivative_series(PowerSum::monomial(0.0, 1.0, 1.0), p, kTight, 2.0);
    // direct check of the printed series at t = 1
    double ref = 0.0;
    for (int n = 0; n < 200; ++n)
        ref += 2.0 * ((n % 2 == 0) ? 1.0 : -1.0) * recip_gamma(2.0 + 0.5 * n);
    CHECK(ds.eval(1.0) == doctest::Approx(ref).epsilon(1e-11));

    SampledFn dk =
        abc_derivative_kernel(to_smooth(PowerSum::monomial(0.0, 1.0, 1.0)), p,
                              0.0, 2.0, 1025);
    double worst = 0.0;
    for (int j = 0; j < dk.n(); ++j)
        worst = std::max(worst, std::fabs(dk.values[j] - ds.eval(dk.t(j))));
    CHECK(worst < 1e-5);
}

TEST_CASE("ABC sampled-path identity agrees with the smooth kernel path") {
    ABParams p(0.35, 0.0);
    PowerSum f(0.0, {{1.0, 0.0}, {1.0, 2.0}}); // 1 + t^2, f(0) != 0
    SampledFn viaSamples = abc_derivative_kernel(sample(f, 0.0, 2.0, 513), p);
    SampledFn viaSmooth = abc_derivative_kernel(to_smooth(f), p, 0.0, 2.0, 513);
    CHECK(max_diff_from(viaSamples, viaSmooth, 0.0) < 2e-4);
    auto [series, rep] = abc_derivative_series(f, p, kTight, 2.0);
    double worst = 0.0;
    for (int j = 1; j < viaSmooth.n(); ++j)
        worst = std::max(worst,
                         std::fabs(viaSmooth.values[j] - series.eval(viaSmooth.t(j))));
    CHECK(worst < 1e-5);
}

TEST_CASE("AB integral closed forms") {
    // AB I^{2/3}(t) = (1/3) t + 2/(3 Gamma(8/3)) t^{5/3}
    ABParams p23(2.0 / 3.0, 0.0);
    PowerSum r = ab_integral(PowerSum::monomial(0.0, 1.0, 1.0), p23);
    REQUIRE(r.terms().size() == 2);
    CHECK(r.terms()[0].expo == doctest::Approx(1.0));
    CHECK(r.terms()[0].coef == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.terms()[1].expo == doctest::Approx(5.0 / 3.0));
    CHECK(r.terms()[1].coef ==
          doctest::Approx(2.0 / (3.0 * std::tgamma(8.0 / 3.0))).epsilon(1e-13));

    // AB I^{1/3} applied twice:
    // (4/9) t + 4/(9 Gamma(7/3)) t^{4/3} + 1/(9 Gamma(8/3)) t^{5/3}
    ABParams p13(1.0 / 3.0, 0.0);
    PowerSum twice =
        ab_integral(ab_integral(PowerSum::monomial(0.0, 1.0, 1.0), p13), p13);
    REQUIRE(twice.terms().size() == 3);
    CHECK(twice.terms()[0].coef == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    CHECK(twice.terms()[1].coef ==
          doctest::Approx(4.0 / (9.0 * std::tgamma(7.0 / 3.0))).epsilon(1e-13));
    CHECK(twice.terms()[2].coef ==
          doctest::Approx(1.0 / (9.0 * std::tgamma(8.0 / 3.0))).epsilon(1e-13));

    // operator-algebra cross-check: ((1-a) + a I^a)^2 t expanded directly
    PowerSum direct =
        PowerSum::monomial(0.0, 4.0 / 9.0, 1.0) +
        rl::integral(PowerSum::monomial(0.0, 1.0, 1.0), 1.0 / 3.0).scaled(4.0 / 9.0) +
        rl::integral(PowerSum::monomial(0.0, 1.0, 1.0), 2.0 / 3.0).scaled(1.0 / 9.0);
    for (double t : {0.25, 1.0, 1.5}) {
        CHECK(twice.eval(t) == doctest::Approx(direct.eval(t)).epsilon(1e-14));
    }

    CHECK(ab_integral(PowerSum(), p13).empty());
}

TEST_CASE("AB integral on grids matches the power-sum path") {
    ABParams p(0.4, 0.0);
    PowerSum f(0.0, {{1.0, 1.0}, {-0.5, 2.0}});
    SampledFn g = ab_integral(sample(f, 0.0, 2.0, 1025), p);
    PowerSum exact = ab_integral(f, p);
    double worst = 0.0;
    for (int j = 0; j < g.n(); ++j)
        worst = std::max(worst, std::fabs(g.values[j] - exact.eval(g.t(j))));
    CHECK(worst < 1e-6);
}

TEST_CASE("inverse identity suite stays below 1e-8") {
    IdentityReport rep = verify_inverse_identities(
        PowerSum::monomial(0.0, 1.0, 1.0), 0.4, 0.6, 0.0, NormFamily::one(),
        kTight, 0.1, 2.0, 64);
    CHECK(rep.integral_after_abr < 1e-8);
    CHECK(rep.abr_after_integral < 1e-8);
    CHECK(rep.newton_leibniz < 1e-8);
    CHECK(rep.commute_dd < 1e-8);
    CHECK(rep.commute_ii < 1e-8);
    CHECK(rep.commute_di < 1e-8);
}

TEST_CASE("newton-leibniz on a constant is exactly zero") {
    IdentityReport rep = verify_inverse_identities(
        PowerSum::constant(0.0, 1.0), 0.5, 0.5, 0.0, NormFamily::one(), kTight,
        0.1, 2.0, 16);
    CHECK(rep.newton_leibniz <= 1e-12);
}

TEST_CASE("commutativity defect for t^2 across order pairs") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (double beta : {0.25, 0.5, 0.75}) {
            IdentityReport rep = verify_inverse_identities(
                PowerSum::monomial(0.0, 1.0, 2.0), alpha, beta, 0.0,
                NormFamily::one(), kTight, 0.1, 2.0, 32);
            CHECK(rep.commute_dd < 1e-8);
            CHECK(rep.commute_ii < 1e-8);
            CHECK(rep.commute_di < 1e-8);
        }
    }
}

namespace {

// Plain fixed-length partial sum of the ABR series, independent of the
// library's truncation logic.
PowerSum abr_series_fixed_terms(const PowerSum& f, const ABParams& p, int N) {
    PowerSum acc;
    PowerSum cur = f;
    double w = p.front();
    for (int n = 0; n < N; ++n) {
        acc = acc.empty() ? cur.scaled(w) : acc + cur.scaled(w);
        cur = rl::integral(cur, p.alpha());
        w *= p.kernel_coef();
    }
    return acc;
}

} // namespace

TEST_CASE("series tail estimate bounds the truth") {
    // truncate early with a loose policy, then compare against a reference
    // sum four times as long
    TruncationPolicy loose{1e-7, 0.0, 10000};
    for (double alpha : {0.3, 0.6}) {
        ABParams p(alpha, 0.0);
        PowerSum f(0.0, {{1.0, 1.0}, {1.0, 2.0}});
        auto [short_sum, rep] = abr_derivative_series(f, p, loose, 2.0);
        PowerSum ref_sum = abr_series_fixed_terms(f, p, 4 * rep.terms_used);
        double true_err = 0.0;
        for (double t = 0.1; t <= 2.0; t += 0.05)
            true_err = std::max(true_err,
                                std::fabs(short_sum.eval(t) - ref_sum.eval(t)));
        CHECK(true_err <= rep.tail_estimate);
        CHECK(rep.tail_estimate < 1e-3); // and the bound is not vacuous
    }
}

TEST_CASE("exponential norm family scales operators consistently") {
    // B(alpha) multiplies ABR D and divides AB I; the inverse identity must
    // hold for the exponential family too.
    IdentityReport rep = verify_inverse_identities(
        PowerSum::monomial(0.0, 1.0, 2.0), 0.5, 0.5, 0.0,
        NormFamily::exponential(0.7), kTight, 0.1, 2.0, 32);
    CHECK(rep.integral_after_abr < 1e-8);
    CHECK(rep.abr_after_integral < 1e-8);
}
