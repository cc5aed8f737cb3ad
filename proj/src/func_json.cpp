#include "mlkcalc/func_json.hpp"

#include <json.hpp>

#include <cmath>

namespace mlk {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw DomainError("config: malformed JSON");
    return j;
}

FuncModel func_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw DomainError("function literal: expected an object with \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exp") {
        return FuncModel::exponential(j.at("rate").get<double>());
    }
    if (kind == "poly") {
        std::vector<PowerTerm> terms;
        const auto& coeffs = j.at("coeffs");
        if (!coeffs.is_array()) throw DomainError("poly: coeffs must be an array");
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            terms.push_back({coeffs[i].get<double>(), double(i)});
        return FuncModel::power(PowerSum(0.0, std::move(terms)));
    }
    if (kind == "powersum") {
        const double base = j.value("base", 0.0);
        std::vector<PowerTerm> terms;
        const auto& arr = j.at("terms");
        if (!arr.is_array()) throw DomainError("powersum: terms must be an array");
        for (const auto& pair : arr) {
            if (!pair.is_array() || pair.size() != 2)
                throw DomainError("powersum: each term is [coef, expo]");
            terms.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
        return FuncModel::power(PowerSum(base, std::move(terms)));
    }
    throw DomainError("function literal: unknown kind \"" + kind + "\"");
}

NormFamily norm_from_json(const json& j) {
    if (!j.contains("B")) return NormFamily::one();
    const auto& b = j.at("B");
    if (b.is_string() && b.get<std::string>() == "one") return NormFamily::one();
    if (b.is_object() && b.value("family", "") == "exp")
        return NormFamily::exponential(b.at("lambda").get<double>());
    throw DomainError("config: B must be \"one\" or {\"family\":\"exp\",\"lambda\":x}");
}

GridRequest grid_from_json(const json& j) {
    GridRequest g;
    if (j.contains("grid")) {
        const auto& gj = j.at("grid");
        g.a = gj.value("a", 0.0);
        g.b = gj.at("b").get<double>();
        g.n = gj.at("n").get<int>();
    }
    if (!(g.b > g.a) || g.n < 2) throw DomainError("config: invalid grid");
    return g;
}

LinearODESpec linear_from_json(const json& j, ODEFamily family) {
    LinearODESpec spec;
    spec.family = family;
    spec.alpha = j.at("alpha").get<double>();
    spec.norm = norm_from_json(j);
    if (family == ODEFamily::ode2 || family == ODEFamily::ode5)
        spec.A = j.at("A").get<double>();
    if (family == ODEFamily::ode4 || family == ODEFamily::ode5)
        spec.f0 = j.value("f0", 0.0);
    if (family == ODEFamily::ode2)
        spec.initial_memory_weight = j.value("memory_weight", 0.0);
    if (j.contains("g")) spec.g = func_from_json(j.at("g"));
    // automatic degenerate-family selection
    if ((spec.family == ODEFamily::ode2 || spec.family == ODEFamily::ode5) &&
        std::fabs(1.0 - spec.k()) < 1e-12) {
        spec.family = spec.family == ODEFamily::ode2 ? ODEFamily::ode1
                                                     : ODEFamily::ode4;
    }
    return spec;
}

ODEFamily family_tag(const std::string& name) {
    if (name == "ODE1") return ODEFamily::ode1;
    if (name == "ODE2") return ODEFamily::ode2;
    if (name == "ODE4") return ODEFamily::ode4;
    if (name == "ODE5") return ODEFamily::ode5;
    throw DomainError("config: unknown linear family \"" + name + "\"");
}

} // namespace

FuncModel parse_func(const std::string& json_text) {
    // fixed aliases for the common monomial inputs; anything else is JSON
    // (there is deliberately no expression parser)
    if (json_text == "0") return FuncModel::power(PowerSum());
    if (json_text == "1")
        return FuncModel::power(PowerSum::constant(0.0, 1.0));
    if (json_text == "t")
        return FuncModel::power(PowerSum::monomial(0.0, 1.0, 1.0));
    if (json_text == "t2" || json_text == "t^2")
        return FuncModel::power(PowerSum::monomial(0.0, 1.0, 2.0));
    if (json_text == "t3" || json_text == "t^3")
        return FuncModel::power(PowerSum::monomial(0.0, 1.0, 3.0));
    if (json_text == "t+t2" || json_text == "t+t^2")
        return FuncModel::power(PowerSum(0.0, {{1.0, 1.0}, {1.0, 2.0}}));
    return func_from_json(parse_json(json_text));
}

ODERequest parse_ode_request(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object() || !j.contains("family"))
        throw DomainError("ode config: expected an object with \"family\"");
    const std::string family = j.at("family").get<std::string>();

    ODERequest req;
    req.grid = grid_from_json(j);
    if (req.grid.a != 0.0)
        throw DomainError("ode config: grid must start at 0");

    if (family == "SEQ3" || family == "SEQ6") {
        req.kind = ODERequest::Kind::sequential;
        const ODEFamily base_family =
            family == "SEQ3" ? ODEFamily::ode2 : ODEFamily::ode5;
        const auto& factors = j.at("factors");
        if (!factors.is_array() || factors.empty())
            throw DomainError("ode config: factors must be a non-empty array");
        for (const auto& fj : factors)
            req.factors.push_back(linear_from_json(fj, base_family));
        req.forcing = func_from_json(j.at("g"));
        return req;
    }
    if (family == "NONLINEAR") {
        req.kind = ODERequest::Kind::nonlinear;
        req.nonlinear.alpha = j.at("alpha").get<double>();
        req.nonlinear.A = j.at("A").get<double>();
        req.nonlinear.g = func_from_json(j.at("g"));
        req.nonlinear.f0 = j.value("f0", 0.0);
        req.nonlinear.norm = norm_from_json(j);
        const std::string branch = j.value("branch", "auto");
        if (branch == "auto")
            req.nonlinear.branch = NonlinearConvSpec::Branch::automatic;
        else if (branch == "plus")
            req.nonlinear.branch = NonlinearConvSpec::Branch::plus;
        else if (branch == "minus")
            req.nonlinear.branch = NonlinearConvSpec::Branch::minus;
        else
            throw DomainError("ode config: branch must be auto|plus|minus");
        return req;
    }
    if (family == "RICCATI") {
        req.kind = ODERequest::Kind::riccati;
        req.riccati.P = j.at("P").get<double>();
        req.riccati.Q = j.at("Q").get<double>();
        req.riccati.alpha = j.at("alpha").get<double>();
        req.riccati.norm = norm_from_json(j);
        req.riccati.f0 = j.value("f0", 0.0);
        const std::string sign = j.value("sign", "plus");
        if (sign == "plus")
            req.riccati.sign = RiccatiSpec::Sign::plus;
        else if (sign == "minus")
            req.riccati.sign = RiccatiSpec::Sign::minus;
        else
            throw DomainError("ode config: sign must be plus|minus");
        req.riccati_terms = j.value("M", 24);
        return req;
    }

    req.kind = ODERequest::Kind::linear;
    req.linear = linear_from_json(j, family_tag(family));
    return req;
}

} // namespace mlk
