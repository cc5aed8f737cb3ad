#pragma once

#include "mlkcalc/funcmodel.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace mlk {

// Deterministic single-panel line plot: fixed 800x500 viewport, axis ticks at
// 1/2/5 * 10^k steps, one polyline per series, legend from the labels.
// Byte-stable for identical input.  Non-finite samples are skipped.
void emit_plot(std::ostream& os, const std::vector<SampledFn>& series,
               const std::vector<std::string>& labels);

} // namespace mlk
