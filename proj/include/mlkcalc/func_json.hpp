#pragma once

#include "mlkcalc/laplace_ode.hpp"
#include "mlkcalc/riccati.hpp"

#include <string>
#include <variant>
#include <vector>

namespace mlk {

// Function literals accepted in configs:
//   {"kind":"powersum","base":0,"terms":[[coef,expo],...]}
//   {"kind":"poly","coeffs":[c0,c1,...]}
//   {"kind":"exp","rate":2}
// Throws DomainError on malformed input.
FuncModel parse_func(const std::string& json_text);

struct GridRequest {
    double a = 0.0;
    double b = 1.0;
    int n = 129;
};

// One parsed "ode" request.  Sequential chains carry their factors in order;
// plain linear and nonlinear requests hold a single spec.
struct ODERequest {
    enum class Kind { linear, sequential, nonlinear, riccati };
    Kind kind = Kind::linear;
    LinearODESpec linear;
    std::vector<LinearODESpec> factors; // sequential
    FuncModel forcing;                  // sequential
    NonlinearConvSpec nonlinear;
    RiccatiSpec riccati;
    int riccati_terms = 24;
    GridRequest grid;
};

// Parses {"family":"ODE1|ODE2|ODE4|ODE5|SEQ3|SEQ6|NONLINEAR|RICCATI", ...}.
// A degenerate ODE2/ODE5 spec (|1 - k| < 1e-12) is rewritten to its ODE1/ODE4
// family here, so the solver's DegenerateK guard only fires on specs
// constructed directly against the library.
ODERequest parse_ode_request(const std::string& json_text);

} // namespace mlk
