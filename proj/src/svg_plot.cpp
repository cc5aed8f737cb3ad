#include "mlkcalc/svg_plot.hpp"

#include "mlkcalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mlk {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 45.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                         "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// largest 1/2/5 * 10^k step giving at most max_ticks intervals
double nice_step(double span, int max_ticks) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / max_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) return mag * mult;
    }
    return mag * 10.0;
}

} // namespace

void emit_plot(std::ostream& os, const std::vector<SampledFn>& series,
               const std::vector<std::string>& labels) {
    if (series.empty()) throw DomainError("emit_plot: no series given");

    double x_lo = series[0].a, x_hi = series[0].b;
    double y_lo = 0.0, y_hi = 0.0;
    bool have_y = false;
    for (const auto& s : series) {
        x_lo = std::min(x_lo, s.a);
        x_hi = std::max(x_hi, s.b);
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            if (!have_y) {
                y_lo = y_hi = v;
                have_y = true;
            } else {
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        }
    }
    if (!have_y) throw DomainError("emit_plot: no finite samples");
    if (y_hi == y_lo) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) {
        return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w;
    };
    auto py = [&](double y) {
        return kMarginTop + (y_hi - y) / (y_hi - y_lo) * plot_h;
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
          "height=\"500\" viewBox=\"0 0 800 500\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // axes and round-number ticks
    const double sx = nice_step(x_hi - x_lo, 8);
    const double sy = nice_step(y_hi - y_lo, 8);
    os << "<g stroke=\"#cccccc\" stroke-width=\"1\" font-family=\"monospace\" "
          "font-size=\"12\">\n";
    for (double x = std::ceil(x_lo / sx) * sx; x <= x_hi + 1e-12 * sx; x += sx) {
        os << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(kMarginTop)
           << "\" x2=\"" << fmt(px(x)) << "\" y2=\""
           << fmt(kHeight - kMarginBottom) << "\"/>\n";
        os << "<text x=\"" << fmt(px(x)) << "\" y=\""
           << fmt(kHeight - kMarginBottom + 18.0)
           << "\" fill=\"black\" stroke=\"none\" text-anchor=\"middle\">"
           << fmt_tick(x) << "</text>\n";
    }
    for (double y = std::ceil(y_lo / sy) * sy; y <= y_hi + 1e-12 * sy; y += sy) {
        os << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py(y))
           << "\" x2=\"" << fmt(kWidth - kMarginRight) << "\" y2=\""
           << fmt(py(y)) << "\"/>\n";
        os << "<text x=\"" << fmt(kMarginLeft - 8.0) << "\" y=\""
           << fmt(py(y) + 4.0)
           << "\" fill=\"black\" stroke=\"none\" text-anchor=\"end\">"
           << fmt_tick(y) << "</text>\n";
    }
    os << "</g>\n";
    os << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop)
       << "\" width=\"" << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << "<polyline fill=\"none\" stroke=\""
           << kColors[i % (sizeof kColors / sizeof kColors[0])]
           << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (int j = 0; j < s.n(); ++j) {
            if (!std::isfinite(s.values[j])) continue;
            if (!first) os << ' ';
            os << fmt(px(s.t(j))) << ',' << fmt(py(s.values[j]));
            first = false;
        }
        os << "\"/>\n";
    }

    for (std::size_t i = 0; i < series.size() && i < labels.size(); ++i) {
        const double ly = kMarginTop + 16.0 + 16.0 * i;
        os << "<rect x=\"" << fmt(kMarginLeft + 10.0) << "\" y=\""
           << fmt(ly - 9.0) << "\" width=\"12\" height=\"4\" fill=\""
           << kColors[i % (sizeof kColors / sizeof kColors[0])] << "\"/>\n";
        os << "<text x=\"" << fmt(kMarginLeft + 28.0) << "\" y=\"" << fmt(ly)
           << "\" font-family=\"monospace\" font-size=\"12\">" << labels[i]
           << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace mlk
