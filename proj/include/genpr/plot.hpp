#ifndef GENPR_PLOT_HPP
#define GENPR_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "io.hpp"
#include "sweep.hpp"

namespace genpr {

/// Trial mean and one standard deviation of one metric at one x value.
struct SeriesPoint {
    double x = 0.0;
    double mean = 0.0;
    double sd = 0.0;
};

struct Series {
    MetricId metric = MetricId::precision;
    std::size_t d = 0;
    std::vector<SeriesPoint> points;
};

/// Groups records into one series per (metric, d), averaging over trials.
/// The standard deviation is the sample one (n - 1) and 0 for a single trial.
inline std::vector<Series> summarize(const SweepResult& result, std::span<const MetricId> metrics) {
    std::map<std::size_t, std::map<double, std::vector<const MetricReport*>>> grouped;
    for (const auto& rec : result.records) {
        grouped[rec.d][rec.x].push_back(&rec.metrics);
    }
    std::vector<Series> out;
    for (const auto m : metrics) {
        for (const auto& [d, by_x] : grouped) {
            Series s{m, d, {}};
            for (const auto& [x, reports] : by_x) {
                double sum = 0.0;
                for (const auto* r : reports) {
                    sum += metric_value(*r, m);
                }
                const double mean = sum / static_cast<double>(reports.size());
                double ss = 0.0;
                for (const auto* r : reports) {
                    const double dev = metric_value(*r, m) - mean;
                    ss += dev * dev;
                }
                const double sd = reports.size() > 1 ? std::sqrt(ss / static_cast<double>(reports.size() - 1)) : 0.0;
                s.points.push_back({x, mean, sd});
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace detail {

inline std::string xml_escape(std::string_view text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

} // namespace detail

/**
 * Renders the sweep as a standalone SVG line chart: metric value (0..1)
 * against r or s, one polyline per (metric, d) series, a shaded band of
 * one standard deviation around the trial mean, axes with ticks, and a
 * legend.
 */
inline std::string to_svg(const SweepResult& result, std::span<const MetricId> metrics) {
    if (result.records.empty()) {
        throw ConfigError("cannot plot an empty sweep result");
    }
    if (metrics.empty()) {
        throw ConfigError("plot needs at least one metric");
    }
    const auto series = summarize(result, metrics);

    constexpr double width = 720, height = 480;
    constexpr double left = 64, right = 200, top = 24, bottom = 56;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

    double x_min = result.records.front().x, x_max = x_min;
    for (const auto& rec : result.records) {
        x_min = std::min(x_min, rec.x);
        x_max = std::max(x_max, rec.x);
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

    static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    static constexpr const char* dashes[] = {"", "6,3", "2,2", "8,3,2,3", "1,3", "10,4"};

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
           detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + " " + detail::fmt(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt(width) + "\" height=\"" + detail::fmt(height) +
           "\" fill=\"white\"/>\n";

    // axes and ticks
    svg += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(top + plot_h) + "\" x2=\"" +
           detail::fmt(left + plot_w) + "\" y2=\"" + detail::fmt(top + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(top) + "\" x2=\"" + detail::fmt(left) +
           "\" y2=\"" + detail::fmt(top + plot_h) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double y = i / 5.0;
        svg += "<line x1=\"" + detail::fmt(left - 4) + "\" y1=\"" + detail::fmt(py(y)) + "\" x2=\"" +
               detail::fmt(left) + "\" y2=\"" + detail::fmt(py(y)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt(left - 8) + "\" y=\"" + detail::fmt(py(y) + 4) +
               "\" text-anchor=\"end\">" + detail::tick_label(y) + "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double x = x_min + (x_max - x_min) * i / 5.0;
        svg += "<line x1=\"" + detail::fmt(px(x)) + "\" y1=\"" + detail::fmt(top + plot_h) + "\" x2=\"" +
               detail::fmt(px(x)) + "\" y2=\"" + detail::fmt(top + plot_h + 4) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt(px(x)) + "\" y=\"" + detail::fmt(top + plot_h + 18) +
               "\" text-anchor=\"middle\">" + detail::tick_label(x) + "</text>\n";
    }
    const char* x_label = result.axis == SweepAxis::radius ? "radius r" : "scale s";
    svg += "<text x=\"" + detail::fmt(left + plot_w / 2) + "\" y=\"" + detail::fmt(height - 14) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + detail::fmt(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           detail::fmt(top + plot_h / 2) + ")\">metric value</text>\n";
    svg += "</g>\n";

    // series
    std::map<std::size_t, std::size_t> dim_index;
    for (const auto& s : series) {
        dim_index.emplace(s.d, dim_index.size());
    }
    std::size_t legend_row = 0;
    for (const auto& s : series) {
        const std::string color = palette[dim_index[s.d] % std::size(palette)];
        const std::string dash = dashes[static_cast<std::size_t>(s.metric) % std::size(dashes)];
        const std::string label = std::string(to_string(s.metric)) +
                                  (result.axis == SweepAxis::radius ? " d=" + std::to_string(s.d) : "");

        std::string band;
        for (const auto& p : s.points) {
            band += detail::fmt(px(p.x)) + "," + detail::fmt(py(p.mean + p.sd)) + " ";
        }
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
            band += detail::fmt(px(it->x)) + "," + detail::fmt(py(it->mean - it->sd)) + " ";
        }
        svg += "<polygon points=\"" + band + "\" fill=\"" + color + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";

        std::string line;
        for (const auto& p : s.points) {
            line += detail::fmt(px(p.x)) + "," + detail::fmt(py(p.mean)) + " ";
        }
        svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
        if (!dash.empty()) {
            svg += " stroke-dasharray=\"" + dash + "\"";
        }
        svg += "><title>" + detail::xml_escape(label) + "</title></polyline>\n";

        const double ly = top + 12 + 16.0 * static_cast<double>(legend_row++);
        const double lx = left + plot_w + 16;
        svg += "<line x1=\"" + detail::fmt(lx) + "\" y1=\"" + detail::fmt(ly) + "\" x2=\"" + detail::fmt(lx + 24) +
               "\" y2=\"" + detail::fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
        if (!dash.empty()) {
            svg += " stroke-dasharray=\"" + dash + "\"";
        }
        svg += "/>\n<text x=\"" + detail::fmt(lx + 30) + "\" y=\"" + detail::fmt(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + detail::xml_escape(label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void render_svg(const SweepResult& result, std::span<const MetricId> metrics, const std::string& path) {
    detail::write_file(path, to_svg(result, metrics));
}

} // namespace genpr

#endif
