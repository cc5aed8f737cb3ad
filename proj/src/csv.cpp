#include "mlkcalc/csv.hpp"

#include <cstdio>

namespace mlk {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const SampledFn& f,
               std::optional<double> tail_estimate) {
    os << (tail_estimate ? "t,value,tail_estimate\n" : "t,value\n");
    for (int j = 0; j < f.n(); ++j) {
        os << csv_number(f.t(j)) << ',' << csv_number(f.values[j]);
        if (tail_estimate) os << ',' << csv_number(*tail_estimate);
        os << '\n';
    }
}

void write_csv_pairs(std::ostream& os, const std::string& x_name,
                     const std::vector<std::pair<double, double>>& rows) {
    os << x_name << ",value\n";
    for (const auto& [x, v] : rows)
        os << csv_number(x) << ',' << csv_number(v) << '\n';
}

} // namespace mlk
