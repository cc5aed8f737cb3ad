// mlkcalc: command-line front end for the Mittag-Leffler-kernel fractional
// calculus library.  Subcommands evaluate operators, solve the ODE families,
// run the identity verification suites, and emit CSV or SVG.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>

#include "mlkcalc/ab_ops.hpp"
#include "mlkcalc/csv.hpp"
#include "mlkcalc/func_json.hpp"
#include "mlkcalc/laplace_ode.hpp"
#include "mlkcalc/riccati.hpp"
#include "mlkcalc/rl_ops.hpp"
#include "mlkcalc/rules.hpp"
#include "mlkcalc/semigroup.hpp"
#include "mlkcalc/specialfn.hpp"
#include "mlkcalc/svg_plot.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string output = "-";
    std::string format = "csv";
    int max_terms = 0; // 0: policy default / MLKCALC_MAX_TERMS
};

mlk::TruncationPolicy make_policy(const CommonOpts& common) {
    mlk::TruncationPolicy pol;
    if (common.max_terms > 0) {
        pol.max_terms = common.max_terms;
    } else if (const char* env = std::getenv("MLKCALC_MAX_TERMS")) {
        const int v = std::atoi(env);
        if (v > 0) pol.max_terms = v;
    }
    return pol;
}

// Outputs are staged in memory and flushed at the very end, so a failing run
// never leaves a partial artifact behind.
void flush_output(const CommonOpts& common, const std::string& payload) {
    if (common.output == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(common.output, std::ios::binary);
    if (!out) throw mlk::DomainError("cannot open output file " + common.output);
    out << payload;
}

std::string render(const CommonOpts& common, const mlk::SampledFn& f,
                   const std::string& label,
                   std::optional<double> tail = std::nullopt) {
    std::ostringstream os;
    if (common.format == "svg")
        mlk::emit_plot(os, {f}, {label});
    else
        mlk::write_csv(os, f, tail);
    return os.str();
}

std::string read_arg_or_file(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw mlk::DomainError("cannot read file " + text.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return text;
}

// ---- verify ----------------------------------------------------------------

struct CheckLine {
    std::string name;
    double value;
    double tol;
};

class Report {
public:
    void add(const std::string& name, double value, double tol) {
        lines_.push_back({name, value, tol});
    }
    bool all_pass() const {
        for (const auto& l : lines_)
            if (!(l.value <= l.tol)) return false;
        return true;
    }
    std::string str() const {
        std::ostringstream os;
        int passed = 0;
        for (const auto& l : lines_) {
            const bool ok = l.value <= l.tol;
            passed += ok;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s %s value=%.6e tol=%.1e\n",
                          ok ? "PASS" : "FAIL", l.name.c_str(), l.value, l.tol);
            os << buf;
        }
        os << "summary " << passed << "/" << lines_.size() << " checks passed\n";
        return os.str();
    }

private:
    std::vector<CheckLine> lines_;
};

void verify_specialfn(Report& rep) {
    using namespace mlk;
    double worst = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.5)
        worst = std::max(worst,
                         std::fabs(mittag_leffler(1.0, x) - std::exp(x)) /
                             std::exp(x));
    rep.add("mlf.e1_matches_exp", worst, 1e-12);
    rep.add("mlf.e_half_erfc",
            std::fabs(mittag_leffler(0.5, -1.0) -
                      std::exp(1.0) * std::erfc(1.0)),
            1e-12);
    worst = 0.0;
    for (double x = -20.7; x < 100.0; x += 0.83)
        worst = std::max(worst, std::fabs(recip_gamma(x) * mlk::gamma(x) - 1.0));
    rep.add("gamma.recip_identity", worst, 1e-12);
}

void verify_basics(Report& rep) {
    using namespace mlk;
    // power-sum merge equivalence
    PowerSum a(0.0, {{1.0, 2.0}, {2.0, 2.0}});
    PowerSum b(0.0, {{3.0, 2.0}});
    double worst = 0.0;
    for (double t = 0.0; t <= 5.0; t += 0.21)
        worst = std::max(worst, std::fabs(a.eval(t) - b.eval(t)));
    rep.add("funcmodel.merge_equivalence", worst, 1e-13);

    // RL semigroup on grids
    SampledFn f = sample(PowerSum::monomial(0.0, 1.0, 2.0), 0.0, 1.0, 2049);
    SampledFn twice = rl::integral(rl::integral(f, 0.4), 0.3);
    SampledFn direct = rl::integral(f, 0.7);
    worst = 0.0;
    for (int j = 0; j < f.n(); ++j)
        worst = std::max(worst, std::fabs(twice.values[j] - direct.values[j]));
    rep.add("rl.grid_semigroup", worst, 1e-6);

    // partition counts against the classical recurrence
    long defect = 0;
    for (int n = 1; n <= 12; ++n) {
        std::vector<long> ways(n + 1, 0);
        ways[0] = 1;
        for (int part = 1; part <= n; ++part)
            for (int v = part; v <= n; ++v) ways[v] += ways[v - part];
        long total = 0;
        for (int k = 1; k <= n; ++k)
            total += static_cast<long>(enumerate_partitions(n, k).size());
        defect += std::labs(total - ways[n]);
    }
    rep.add("rules.partition_counts", double(defect), 0.0);

    // m = 0 product-rule bracket is the ABR derivative
    ABParams p(0.5, 0.0);
    PowerSum u = PowerSum::monomial(0.0, 1.0, 2.0);
    PowerSum bracket = product_rule_bracket(u, p, 0, 60);
    auto [abr, r2] = abr_derivative_series(u, p, {1e-14, 1e-14, 10000}, 2.0);
    worst = 0.0;
    for (double t = 0.1; t <= 2.0; t += 0.1)
        worst = std::max(worst, std::fabs(bracket.eval(t) - abr.eval(t)));
    rep.add("rules.m0_bracket", worst, 1e-10);
}

void verify_inverse_suite(Report& rep, const mlk::TruncationPolicy& pol) {
    using namespace mlk;
    const std::vector<std::pair<std::string, PowerSum>> inputs = {
        {"1", PowerSum::constant(0.0, 1.0)},
        {"t", PowerSum::monomial(0.0, 1.0, 1.0)},
        {"t2", PowerSum::monomial(0.0, 1.0, 2.0)},
        {"t+t2", PowerSum(0.0, {{1.0, 1.0}, {1.0, 2.0}})},
    };
    for (const auto& [name, f] : inputs) {
        double worst = 0.0;
        for (double alpha : {0.25, 0.5, 0.75})
            for (double beta : {0.25, 0.5, 0.75})
                worst = std::max(
                    worst, verify_inverse_identities(f, alpha, beta, 0.0,
                                                     NormFamily::one(), pol,
                                                     0.1, 2.0, 33)
                               .max());
        rep.add("inverse.residuals_" + name, worst, 1e-8);
    }
}

// single-case variant: all six residuals reported individually
void verify_inverse_single(Report& rep, const mlk::PowerSum& f, double alpha,
                           double beta, const mlk::TruncationPolicy& pol) {
    const mlk::IdentityReport r = mlk::verify_inverse_identities(
        f, alpha, beta, 0.0, mlk::NormFamily::one(), pol, 0.1, 2.0, 33);
    rep.add("inverse.integral_after_abr", r.integral_after_abr, 1e-8);
    rep.add("inverse.abr_after_integral", r.abr_after_integral, 1e-8);
    rep.add("inverse.newton_leibniz", r.newton_leibniz, 1e-8);
    rep.add("inverse.commute_dd", r.commute_dd, 1e-8);
    rep.add("inverse.commute_ii", r.commute_ii, 1e-8);
    rep.add("inverse.commute_di", r.commute_di, 1e-8);
}

void verify_paths(Report& rep, const mlk::TruncationPolicy& pol) {
    using namespace mlk;
    const int n = 1025;
    double worst = 0.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
        ABParams p(alpha, 0.0);
        for (const PowerSum& f :
             {PowerSum::constant(0.0, 1.0), PowerSum::monomial(0.0, 1.0, 1.0),
              PowerSum::monomial(0.0, 1.0, 2.0)}) {
            SampledFn s = sample(f, 0.0, 2.0, n);
            SampledFn k = abr_derivative_kernel(s, p, pol);
            auto [ser, repTerm] = abr_derivative_series(s, p, pol);
            for (int j = 0; j < n; ++j) {
                if (k.t(j) < 0.05) continue;
                worst = std::max(worst, std::fabs(k.values[j] - ser.values[j]));
            }
        }
    }
    rep.add("ab.path_agreement", worst, 1e-5);
}

void verify_laplace(Report& rep, const mlk::TruncationPolicy& pol) {
    using namespace mlk;
    rep.add("talbot.t",
            std::fabs(talbot_invert([](Cplx s) { return 1.0 / (s * s); }, 1.5) -
                      1.5),
            1e-8);
    rep.add("talbot.exp",
            std::fabs(talbot_invert([](Cplx s) { return 1.0 / (s + 1.0); }, 1.0) -
                      std::exp(-1.0)),
            1e-8);
    rep.add("talbot.sqrt",
            std::fabs(talbot_invert([](Cplx s) { return std::pow(s, -1.5); }, 1.0) -
                      1.0 / mlk::gamma(1.5)),
            1e-7);

    ABParams p(0.5, 0.0);
    TransferFn T = abr_transfer(p);
    auto [series, r0] = abr_derivative_series(
        PowerSum::monomial(0.0, 1.0, 2.0), p, pol, 2.0);
    double worst = 0.0;
    for (double t = 0.1; t <= 2.0; t += 0.1) {
        const double inv = talbot_invert(
            [&](Cplx s) { return T(s) * 2.0 / (s * s * s); }, t);
        worst = std::max(worst, std::fabs(inv - series.eval(t)));
    }
    rep.add("laplace.abr_transfer_consistency", worst, 1e-6);
}

void verify_ode(Report& rep, const mlk::TruncationPolicy& pol) {
    using namespace mlk;
    LinearODESpec spec;
    spec.family = ODEFamily::ode5;
    spec.alpha = 0.5;
    spec.A = -1.0;
    spec.g = FuncModel::power(PowerSum::monomial(0.0, 1.0, 1.0));
    spec.f0 = 0.3;
    GridSpec grid{2.0, 2049};
    SampledFn f = solve_linear(spec, grid, nullptr, pol);
    ABParams p(0.5, 0.0);
    SampledFn d = abc_derivative_kernel(f, p, spec.f0, pol);
    double worst = 0.0;
    for (int j = 0; j < f.n(); ++j) {
        if (f.t(j) < 0.1) continue;
        worst = std::max(worst, std::fabs(d.values[j] + f.values[j] - f.t(j)));
    }
    rep.add("ode.ode5_residual", worst, 1e-4);

    NonlinearConvSpec nl;
    nl.alpha = 0.5;
    nl.A = 2.0;
    nl.g = FuncModel::power(PowerSum::monomial(0.0, -2.0, 1.0));
    nl.f0 = 1.0;
    SampledFn fn = solve_nonlinear_conv(nl, GridSpec{2.0, 65});
    worst = 0.0;
    for (int j = 0; j < fn.n(); ++j) {
        if (fn.t(j) < 0.1) continue;
        worst = std::max(worst, std::fabs(fn.values[j] - 1.0));
    }
    rep.add("ode.nonlinear_constant", worst, 1e-6);
}

void verify_riccati(Report& rep) {
    using namespace mlk;
    double worst_id = 0.0, worst_res = 0.0;
    for (auto [P, Q] : {std::pair{-1.0, 1.0}, {-4.0, 1.0}, {0.0, 1.0}}) {
        RiccatiSpec spec;
        spec.P = P;
        spec.Q = Q;
        spec.alpha = 0.4;
        auto a = riccati_coefficients(spec, 16);
        for (int m = 0; m <= 16; ++m) {
            // front * sum_k a_k (...) == Q sum_k a_k a_{m-k} + P [m = 0]
            const double lhs = riccati_abc_coefficient(spec, a, m);
            double rhs = (m == 0) ? spec.P : 0.0;
            for (int k = 0; k <= m; ++k) rhs += spec.Q * a[k] * a[m - k];
            const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
            worst_id = std::max(worst_id, std::fabs(lhs - rhs) / scale);
        }
        worst_res =
            std::max(worst_res, riccati_residual(spec, a, 0.0, 1.0, 17));
    }
    rep.add("riccati.coefficient_identity", worst_id, 1e-12);
    rep.add("riccati.residual", worst_res, 1e-12);
}

void verify_semigroup(Report& rep) {
    using namespace mlk;
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i)
        for (int j = 1; j <= 9; ++j)
            worst = std::max(worst, std::fabs(indicial_poly(i * 0.1, j * 0.1)
                                                  .eval_expanded(1.0)));
    rep.add("semigroup.indicial_root_at_1", worst, 1e-14);

    worst = 0.0;
    for (int i = 1; i <= 9; ++i)
        for (int j = 1; j <= 9; ++j) {
            IndicialPoly P = indicial_poly(i * 0.1, j * 0.1);
            for (double x = 0.1; x <= 5.0; x += 0.35)
                worst = std::max(
                    worst, std::fabs(P.eval_expanded(x) - P.eval_factored(x)) /
                               std::max(1.0, std::fabs(P.eval_expanded(x))));
        }
    rep.add("semigroup.indicial_forms_agree", worst, 1e-12);

    SemigroupCase cx;
    cx.alpha = cx.beta = 1.0 / 3.0;
    cx.f = PowerSum::monomial(0.0, 1.0, 1.0);
    PowerSum defect = semigroup_defect_power(cx);
    PowerSum fie = fie_residual_power(cx);
    worst = 0.0;
    for (double t = 0.2; t <= 2.0; t += 0.2)
        worst = std::max(worst, std::fabs(defect.eval(t) - fie.eval(t)));
    rep.add("semigroup.fie_equals_defect", worst, 1e-12);

    SemigroupSolution sol(3);
    SampledFn res = fde_residual(sol, 2.0, 4097);
    worst = 0.0;
    for (int j = 0; j < res.n(); ++j) {
        if (res.t(j) < 0.5) continue;
        worst = std::max(worst, std::fabs(res.values[j]));
    }
    rep.add("semigroup.fde_solution_residual", worst, 1e-3);
}

std::string run_verify(const std::string& suite, const std::string& f_arg,
                       double alpha, double beta, const CommonOpts& common) {
    const mlk::TruncationPolicy pol = make_policy(common);
    Report rep;
    if (!f_arg.empty() || alpha > 0.0) {
        // single-case mode: six residuals for one (f, alpha, beta)
        mlk::FuncModel f = mlk::parse_func(f_arg.empty() ? "t" : f_arg);
        if (f.kind != mlk::FuncModel::Kind::power_sum)
            throw mlk::DomainError("verify: --f must be a power sum");
        const double a = alpha > 0.0 ? alpha : 0.5;
        const double b = beta > 0.0 ? beta : a;
        verify_inverse_single(rep, f.ps, a, b, pol);
    } else {
        if (suite == "all" || suite == "specialfn") verify_specialfn(rep);
        if (suite == "all" || suite == "basics") verify_basics(rep);
        if (suite == "all" || suite == "inverse") verify_inverse_suite(rep, pol);
        if (suite == "all" || suite == "paths") verify_paths(rep, pol);
        if (suite == "all" || suite == "laplace") verify_laplace(rep, pol);
        if (suite == "all" || suite == "ode") verify_ode(rep, pol);
        if (suite == "all" || suite == "riccati") verify_riccati(rep);
        if (suite == "all" || suite == "semigroup") verify_semigroup(rep);
    }
    if (!rep.all_pass()) {
        // report still goes to the caller; exit code signals the failure
        flush_output(common, rep.str());
        throw mlk::NoConvergence("verify: at least one residual check failed");
    }
    return rep.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-calculus engine with Mittag-Leffler kernels"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("-o,--output", common.output, "output path, - for stdout");
    app.add_option("--format", common.format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    app.add_option("--max-terms", common.max_terms,
                   "series term cap (also env MLKCALC_MAX_TERMS)");

    // mlf -------------------------------------------------------------------
    auto* mlf = app.add_subcommand("mlf", "Mittag-Leffler function table");
    double mlf_alpha = 0.5, mlf_lo = -5.0, mlf_hi = 5.0;
    int mlf_n = 101;
    mlf->add_option("--alpha", mlf_alpha, "order in (0,1]")->required();
    mlf->add_option("--x-min", mlf_lo, "left end");
    mlf->add_option("--x-max", mlf_hi, "right end");
    mlf->add_option("-n,--samples", mlf_n, "sample count");

    // ab-deriv ----------------------------------------------------------------
    auto* abd = app.add_subcommand("ab-deriv", "ABR/ABC derivative of f");
    double abd_alpha = 0.5, abd_b = 2.0, abd_lambda = 0.0;
    int abd_n = 257;
    std::string abd_type = "abr", abd_path = "series", abd_f = "";
    abd->add_option("--alpha", abd_alpha)->required();
    abd->add_option("--type", abd_type)->check(CLI::IsMember({"abr", "abc"}));
    abd->add_option("--path", abd_path)
        ->check(CLI::IsMember({"series", "kernel"}));
    abd->add_option("--f", abd_f, "function literal JSON")->required();
    abd->add_option("--grid-b", abd_b);
    abd->add_option("--grid-n", abd_n);
    abd->add_option("--norm-lambda", abd_lambda,
                    "exponential normalisation exponent (0 = constant 1)");

    // ab-int ------------------------------------------------------------------
    auto* abi = app.add_subcommand("ab-int", "AB integral of f");
    double abi_alpha = 0.5, abi_b = 2.0;
    int abi_n = 257;
    std::string abi_f = "";
    abi->add_option("--alpha", abi_alpha)->required();
    abi->add_option("--f", abi_f)->required();
    abi->add_option("--grid-b", abi_b);
    abi->add_option("--grid-n", abi_n);

    // rl ----------------------------------------------------------------------
    auto* rlc = app.add_subcommand("rl", "Riemann-Liouville / Caputo operators");
    double rl_order = 0.5, rl_b = 2.0;
    int rl_n = 257;
    std::string rl_op = "integral", rl_f = "";
    rlc->add_option("--op", rl_op)
        ->check(CLI::IsMember({"integral", "deriv", "caputo"}));
    rlc->add_option("--order", rl_order, "mu for integral, alpha otherwise")
        ->required();
    rlc->add_option("--f", rl_f)->required();
    rlc->add_option("--grid-b", rl_b);
    rlc->add_option("--grid-n", rl_n);

    // ode ---------------------------------------------------------------------
    auto* ode = app.add_subcommand("ode", "solve an ODE spec (JSON)");
    std::string ode_spec;
    int ode_talbot_m = 32;
    ode->add_option("--spec", ode_spec, "JSON text or @file")->required();
    ode->add_option("--talbot-m", ode_talbot_m, "Talbot nodes (nonlinear)");

    // rule --------------------------------------------------------------------
    auto* rule = app.add_subcommand("rule", "product/chain rule expansions");
    std::string rule_type = "product", rule_u, rule_v, rule_f, rule_g;
    double rule_alpha = 0.5, rule_b = 2.0;
    int rule_n = 129, rule_series = 40, rule_classical = 12;
    bool rule_debug = false;
    rule->add_option("--type", rule_type)
        ->check(CLI::IsMember({"product", "chain"}));
    rule->add_option("--alpha", rule_alpha)->required();
    rule->add_option("--u", rule_u, "product: power-sum factor");
    rule->add_option("--v", rule_v, "product: smooth factor");
    rule->add_option("--f", rule_f, "chain: outer function");
    rule->add_option("--g", rule_g, "chain: inner function");
    rule->add_option("--grid-b", rule_b);
    rule->add_option("--grid-n", rule_n);
    rule->add_option("--series-cap", rule_series);
    rule->add_option("--classical-cap", rule_classical);
    rule->add_flag("--debug-terms", rule_debug,
                   "emit per-term table (m,n,k,contribution) instead");

    // semigroup -----------------------------------------------------------------
    auto* sg = app.add_subcommand("semigroup", "semigroup analysis");
    std::string sg_op = "defect", sg_f = "{\"kind\":\"powersum\",\"base\":0,"
                                         "\"terms\":[[1,1]]}";
    double sg_alpha = 1.0 / 3.0, sg_beta = 1.0 / 3.0, sg_b = 2.0, sg_tlo = 0.0;
    int sg_n = 257, sg_q = 3;
    sg->add_option("--op", sg_op)
        ->check(CLI::IsMember({"defect", "fie", "indicial", "solution", "fde"}));
    sg->add_option("--alpha", sg_alpha);
    sg->add_option("--beta", sg_beta);
    sg->add_option("--f", sg_f);
    sg->add_option("--q", sg_q);
    sg->add_option("--grid-b", sg_b);
    sg->add_option("--grid-n", sg_n);
    sg->add_option("--t-lo", sg_tlo, "left end for solution tables");

    // verify --------------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run identity verification suites");
    std::string ver_suite = "all", ver_f;
    double ver_alpha = 0.0, ver_beta = 0.0;
    ver->add_option("--suite", ver_suite)
        ->check(CLI::IsMember({"all", "specialfn", "basics", "inverse", "paths",
                               "laplace", "ode", "riccati", "semigroup"}));
    ver->add_option("--f", ver_f,
                    "single-case mode: function literal or alias (1, t, t2, ...)");
    ver->add_option("--alpha", ver_alpha, "single-case mode: first order");
    ver->add_option("--beta", ver_beta, "single-case mode: second order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        const mlk::TruncationPolicy pol = make_policy(common);
        std::string payload;

        if (*mlf) {
            if (mlf_n < 2) throw mlk::DomainError("mlf: need n >= 2");
            std::vector<std::pair<double, double>> rows;
            for (int i = 0; i < mlf_n; ++i) {
                const double x = mlf_lo + (mlf_hi - mlf_lo) * i / (mlf_n - 1);
                rows.emplace_back(x, mlk::mittag_leffler(mlf_alpha, x, pol));
            }
            std::ostringstream os;
            mlk::write_csv_pairs(os, "x", rows);
            payload = os.str();
        } else if (*abd) {
            mlk::FuncModel f = mlk::parse_func(read_arg_or_file(abd_f));
            mlk::NormFamily norm = abd_lambda == 0.0
                                       ? mlk::NormFamily::one()
                                       : mlk::NormFamily::exponential(abd_lambda);
            mlk::ABParams p(abd_alpha, 0.0, norm);
            std::optional<double> tail;
            mlk::SampledFn out;
            if (abd_type == "abr" && abd_path == "kernel") {
                out = mlk::abr_derivative_kernel(f.sample(0.0, abd_b, abd_n), p,
                                                 pol);
            } else if (abd_type == "abr") {
                auto [r, rep] =
                    mlk::abr_derivative_series(f.sample(0.0, abd_b, abd_n), p, pol);
                out = r;
                tail = rep.tail_estimate;
            } else if (abd_path == "kernel") {
                out = mlk::abc_derivative_kernel(f.smooth(), p, 0.0, abd_b,
                                                 abd_n, pol);
            } else {
                auto [r, rep] = mlk::abc_derivative_series(f.smooth(), p, 0.0,
                                                           abd_b, abd_n, pol);
                out = r;
                tail = rep.tail_estimate;
            }
            payload = render(common, out, abd_type + std::string("-") + abd_path,
                             common.format == "csv" ? tail : std::nullopt);
        } else if (*abi) {
            mlk::FuncModel f = mlk::parse_func(read_arg_or_file(abi_f));
            mlk::ABParams p(abi_alpha, 0.0);
            mlk::SampledFn out;
            if (f.kind == mlk::FuncModel::Kind::power_sum) {
                mlk::PowerSum r = mlk::ab_integral(f.ps, p);
                out = mlk::sample([&r](double t) { return r.eval(t); }, 0.0,
                                  abi_b, abi_n);
            } else {
                out = mlk::ab_integral(f.sample(0.0, abi_b, abi_n), p);
            }
            payload = render(common, out, "ab-int");
        } else if (*rlc) {
            mlk::FuncModel f = mlk::parse_func(read_arg_or_file(rl_f));
            mlk::SampledFn out;
            if (rl_op == "integral") {
                out = mlk::rl::integral(f.sample(0.0, rl_b, rl_n), rl_order);
            } else if (rl_op == "deriv") {
                out = mlk::rl::derivative(f.sample(0.0, rl_b, rl_n), rl_order);
            } else {
                out = mlk::rl::caputo(f.smooth(), rl_order, 0.0, rl_b, rl_n);
            }
            payload = render(common, out, rl_op);
        } else if (*ode) {
            mlk::ODERequest req =
                mlk::parse_ode_request(read_arg_or_file(ode_spec));
            mlk::GridSpec grid{req.grid.b, req.grid.n};
            if (req.kind == mlk::ODERequest::Kind::linear) {
                mlk::LinearSolveInfo info;
                mlk::SampledFn out = mlk::solve_linear(req.linear, grid, &info, pol);
                if (info.f0_mismatch)
                    std::cerr << "note: formula trace at 0+ is "
                              << mlk::csv_number(info.f0_formula)
                              << ", prescribed f0 is "
                              << mlk::csv_number(info.f0_requested) << "\n";
                payload = render(common, out, "ode");
            } else if (req.kind == mlk::ODERequest::Kind::sequential) {
                payload = render(
                    common,
                    mlk::solve_sequential(req.factors, req.forcing, grid, pol),
                    "ode-seq");
            } else if (req.kind == mlk::ODERequest::Kind::nonlinear) {
                payload = render(
                    common, mlk::solve_nonlinear_conv(req.nonlinear, grid,
                                                      ode_talbot_m),
                    "ode-nonlinear");
            } else {
                // coefficient table plus the residual at each truncation depth
                auto coef = mlk::riccati_coefficients(req.riccati,
                                                      req.riccati_terms);
                std::ostringstream os;
                os << "m,a_m,residual\n";
                for (std::size_t m = 0; m < coef.size(); ++m) {
                    const std::vector<double> prefix(coef.begin(),
                                                     coef.begin() + m + 1);
                    os << m << ',' << mlk::csv_number(coef[m]) << ','
                       << mlk::csv_number(mlk::riccati_residual(
                              req.riccati, prefix, 0.0, req.grid.b,
                              std::min(req.grid.n, 65)))
                       << '\n';
                }
                payload = os.str();
            }
        } else if (*rule) {
            mlk::RuleTruncation trunc{rule_series, rule_classical};
            mlk::ABParams p(rule_alpha, 0.0);
            std::vector<mlk::TermRecord> records;
            mlk::SampledFn out;
            if (rule_type == "product") {
                if (rule_u.empty() || rule_v.empty())
                    throw mlk::DomainError("rule: product needs --u and --v");
                mlk::FuncModel u = mlk::parse_func(read_arg_or_file(rule_u));
                if (u.kind != mlk::FuncModel::Kind::power_sum)
                    throw mlk::DomainError("rule: --u must be a power sum");
                mlk::FuncModel v = mlk::parse_func(read_arg_or_file(rule_v));
                out = mlk::product_rule(u.ps, v.smooth(), p, trunc, rule_b,
                                        rule_n, rule_debug ? &records : nullptr);
            } else {
                if (rule_f.empty() || rule_g.empty())
                    throw mlk::DomainError("rule: chain needs --f and --g");
                mlk::FuncModel f = mlk::parse_func(read_arg_or_file(rule_f));
                mlk::FuncModel g = mlk::parse_func(read_arg_or_file(rule_g));
                out = mlk::chain_rule(f.smooth(), g.smooth(), p, trunc, rule_b,
                                      rule_n, rule_debug ? &records : nullptr);
            }
            if (rule_debug) {
                std::ostringstream os;
                os << "m,n,k,contribution\n";
                for (const auto& r : records)
                    os << r.m << ',' << r.n << ',' << r.k << ','
                       << mlk::csv_number(r.contribution) << '\n';
                payload = os.str();
            } else {
                payload = render(common, out, "rule-" + rule_type);
            }
        } else if (*sg) {
            if (sg_op == "defect" || sg_op == "fie") {
                mlk::FuncModel f = mlk::parse_func(read_arg_or_file(sg_f));
                if (f.kind != mlk::FuncModel::Kind::power_sum)
                    throw mlk::DomainError("semigroup: --f must be a power sum");
                mlk::SemigroupCase c;
                c.alpha = sg_alpha;
                c.beta = sg_beta;
                c.f = f.ps;
                mlk::SampledFn out = sg_op == "defect"
                                         ? mlk::semigroup_defect(c, sg_b, sg_n)
                                         : mlk::fie_residual(c, sg_b, sg_n);
                payload = render(common, out, "semigroup-" + sg_op);
            } else if (sg_op == "indicial") {
                mlk::IndicialPoly P = mlk::indicial_poly(sg_alpha, sg_beta);
                std::vector<std::pair<double, double>> rows;
                for (int i = 0; i < sg_n; ++i) {
                    const double x = 0.1 + (sg_b - 0.1) * i / (sg_n - 1);
                    rows.emplace_back(x, P.eval_expanded(x));
                }
                std::ostringstream os;
                mlk::write_csv_pairs(os, "x", rows);
                payload = os.str();
            } else if (sg_op == "solution") {
                mlk::SemigroupSolution sol(sg_q, pol);
                const double lo = sg_tlo > 0.0 ? sg_tlo : sg_b / (sg_n - 1);
                mlk::SampledFn out = mlk::sample(
                    [&sol](double t) { return sol.eval(t); }, lo, sg_b, sg_n);
                payload = render(common, out, "semigroup-solution");
            } else { // fde
                mlk::SemigroupSolution sol(sg_q, pol);
                mlk::SampledFn out = mlk::fde_residual(sol, sg_b, sg_n);
                payload = render(common, out, "semigroup-fde");
            }
        } else if (*ver) {
            payload = run_verify(ver_suite, ver_f, ver_alpha, ver_beta, common);
        }

        flush_output(common, payload);
        return kExitOk;
    } catch (const mlk::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mlk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
