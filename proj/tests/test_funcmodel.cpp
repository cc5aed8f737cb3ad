#include "doctest.h"

#include "mlkcalc/funcmodel.hpp"
#include "mlkcalc/specialfn.hpp"

#include <cmath>
#include <random>

using namespace mlk;

TEST_CASE("powersum evaluation") {
    CHECK(PowerSum::monomial(0.0, 1.0, 1.0).eval(3.0) == doctest::Approx(3.0));
    CHECK(PowerSum().eval(7.0) == 0.0);

    // (1/3) t + 2/(3 Gamma(8/3)) t^{5/3} at t = 1
    const double g83 = std::tgamma(8.0 / 3.0);
    PowerSum f(0.0, {{1.0 / 3.0, 1.0}, {2.0 / (3.0 * g83), 5.0 / 3.0}});
    CHECK(f.eval(1.0) ==
          doctest::Approx(1.0 / 3.0 + 2.0 / (3.0 * g83)).epsilon(1e-15));
}

TEST_CASE("powersum domain checks") {
    PowerSum f = PowerSum::monomial(1.0, 2.0, 1.0);
    CHECK_THROWS_AS(f.eval(0.5), DomainError);
    CHECK_THROWS_AS(PowerSum(0.0, {{1.0, -1.0}}), DomainError);
}

TEST_CASE("powersum merges duplicate exponents on construction") {
    PowerSum a(0.0, {{1.0, 2.0}, {2.0, 2.0}});
    PowerSum b(0.0, {{3.0, 2.0}});
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double t = dist(rng);
        CHECK(a.eval(t) == doctest::Approx(b.eval(t)).epsilon(1e-15));
    }
    CHECK(a.terms().size() == 1);
    // coefficients that cancel drop out entirely
    PowerSum c(0.0, {{1.5, 1.0}, {-1.5, 1.0 + 1e-13}});
    CHECK(c.empty());
}

TEST_CASE("sampling on uniform grids") {
    SampledFn s = sample(PowerSum::monomial(0.0, 1.0, 1.0), 0.0, 1.0, 3);
    REQUIRE(s.n() == 3);
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[1] == doctest::Approx(0.5));
    CHECK(s.values[2] == doctest::Approx(1.0));

    SampledFn q = sample(PowerSum::monomial(0.0, 1.0, 2.0), 0.0, 2.0, 5);
    CHECK(q.values[0] == 0.0);
    CHECK(q.values[1] == doctest::Approx(0.25));
    CHECK(q.values[2] == doctest::Approx(1.0));
    CHECK(q.values[3] == doctest::Approx(2.25));
    CHECK(q.values[4] == doctest::Approx(4.0));

    CHECK_THROWS_AS(sample(PowerSum(), 1.0, 0.0, 5), DomainError);
    CHECK_THROWS_AS(sample(PowerSum(), 0.0, 1.0, 1), DomainError);
}

TEST_CASE("sample round trip is exact at grid nodes") {
    PowerSum f(0.5, {{2.0, 0.7}, {-1.0, 2.0}, {0.25, 3.3}});
    SampledFn s = sample(f, 0.5, 2.5, 17);
    for (int j = 0; j < s.n(); ++j) {
        CHECK(s.values[j] == f.eval(s.t(j)));
    }
}

TEST_CASE("to_smooth exposes exact derivatives") {
    PowerSum f = PowerSum::monomial(0.0, 1.0, 2.0); // t^2
    SmoothFn s = to_smooth(f);
    CHECK(s.deriv(0, 1.3) == doctest::Approx(f.eval(1.3)));
    CHECK(s.deriv(1, 1.3) == doctest::Approx(2.6));
    CHECK(s.deriv(2, 1.3) == doctest::Approx(2.0));
    CHECK(s.deriv(3, 1.3) == doctest::Approx(0.0));
}

TEST_CASE("smooth_exp derivatives") {
    SmoothFn e = smooth_exp(2.0);
    CHECK(e.eval(0.5) == doctest::Approx(std::exp(1.0)));
    CHECK(e.deriv(3, 0.5) == doctest::Approx(8.0 * std::exp(1.0)));
    CHECK(e.deriv(0, 0.5) == e.eval(0.5));
}

TEST_CASE("powersum derivative") {
    PowerSum f(0.0, {{3.0, 0.0}, {2.0, 1.0}, {1.0, 2.0}});
    PowerSum d = f.derivative();
    CHECK(d.eval(2.0) == doctest::Approx(2.0 + 2.0 * 2.0));
    CHECK(PowerSum::constant(0.0, 4.0).derivative().empty());
}

TEST_CASE("func model laplace transforms") {
    FuncModel lin = FuncModel::power(PowerSum::monomial(0.0, 1.0, 1.0));
    const std::complex<double> s(2.0, 1.0);
    const std::complex<double> got = lin.laplace(s);
    const std::complex<double> want = 1.0 / (s * s);
    CHECK(std::abs(got - want) < 1e-14);

    FuncModel e = FuncModel::exponential(2.0);
    CHECK(std::abs(e.laplace(s) - 1.0 / (s - 2.0)) < 1e-14);

    // t^{1/2}: Gamma(3/2) s^{-3/2}
    FuncModel h = FuncModel::power(PowerSum::monomial(0.0, 1.0, 0.5));
    CHECK(std::abs(h.laplace(s) - mlk::gamma(1.5) * std::pow(s, -1.5)) < 1e-14);
}
