#pragma once

#include "mlkcalc/funcmodel.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace mlk {

// Round-trip-safe decimal form (17 significant digits), locale-independent.
std::string csv_number(double v);

// Rows t,value[,tail_estimate]; the tail column repeats the series bound.
void write_csv(std::ostream& os, const SampledFn& f,
               std::optional<double> tail_estimate = std::nullopt);

// x,value table for scalar function sweeps.
void write_csv_pairs(std::ostream& os, const std::string& x_name,
                     const std::vector<std::pair<double, double>>& rows);

} // namespace mlk
