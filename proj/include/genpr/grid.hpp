#ifndef GENPR_GRID_HPP
#define GENPR_GRID_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace genpr {

inline double parse_double(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

/**
 * Parses a comma-separated grid whose items are plain numbers or
 * `start:stop:step` ranges. A range holds start + i*step for every i whose
 * value does not pass `stop` by more than half a step, so both endpoints are
 * included despite rounding in the step.
 */
inline std::vector<double> parse_grid(std::string_view spec) {
    std::vector<double> out;
    if (spec.empty()) {
        return out;
    }
    std::size_t begin = 0;
    while (begin <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', begin), spec.size());
        const std::string_view item = spec.substr(begin, comma - begin);
        if (const auto c1 = item.find(':'); c1 != std::string_view::npos) {
            const auto c2 = item.find(':', c1 + 1);
            if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos) {
                throw ConfigError("range must be start:stop:step, got '" + std::string(item) + "'");
            }
            const double start = parse_double(item.substr(0, c1));
            const double stop = parse_double(item.substr(c1 + 1, c2 - c1 - 1));
            const double step = parse_double(item.substr(c2 + 1));
            if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start) || !std::isfinite(stop)) {
                throw ConfigError("range step must be positive and bounds finite in '" + std::string(item) + "'");
            }
            if (stop < start) {
                throw ConfigError("range stop is below start in '" + std::string(item) + "'");
            }
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
            for (std::size_t i = 0; i < count; ++i) {
                out.push_back(start + static_cast<double>(i) * step);
            }
        } else {
            out.push_back(parse_double(item));
        }
        begin = comma + 1;
    }
    return out;
}

/// Like parse_grid, but every value must be a positive integer.
inline std::vector<std::size_t> parse_int_grid(std::string_view spec) {
    std::vector<std::size_t> out;
    for (const double v : parse_grid(spec)) {
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
            throw ConfigError("expected a positive integer, got " + std::to_string(v));
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

} // namespace genpr

#endif
