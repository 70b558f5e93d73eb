#ifndef GENPR_SWEEP_HPP
#define GENPR_SWEEP_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "samplers.hpp"
#include "transforms.hpp"

/**
 * @file sweep.hpp
 *
 * Experiment drivers. A synthetic sweep evaluates the metric suite on a
 * fresh reference/generated pair for every (dimension, radius, trial); a
 * scale sweep evaluates one transformed generated cloud per scale factor.
 *
 * CSV layout (floats with 17 significant digits):
 *
 *   radius sweeps: family,d,r,trial,n,k,precision,recall,c_precision,c_recall,sym_precision,sym_recall
 *   scale sweeps:  family,s,trial,n,k,precision,recall,c_precision,c_recall,sym_precision,sym_recall
 */

namespace genpr {

enum class MetricId { precision, recall, c_precision, c_recall, sym_precision, sym_recall };

inline constexpr std::array<MetricId, 6> all_metrics = {MetricId::precision,   MetricId::recall,
                                                        MetricId::c_precision, MetricId::c_recall,
                                                        MetricId::sym_precision, MetricId::sym_recall};

inline std::string_view to_string(MetricId m) noexcept {
    switch (m) {
    case MetricId::precision:
        return "precision";
    case MetricId::recall:
        return "recall";
    case MetricId::c_precision:
        return "c_precision";
    case MetricId::c_recall:
        return "c_recall";
    case MetricId::sym_precision:
        return "sym_precision";
    case MetricId::sym_recall:
        return "sym_recall";
    }
    return "unknown";
}

inline MetricId parse_metric(std::string_view name) {
    for (const auto m : all_metrics) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ConfigError("unknown metric '" + std::string(name) + "'");
}

inline double metric_value(const MetricReport& r, MetricId m) noexcept {
    switch (m) {
    case MetricId::precision:
        return r.precision;
    case MetricId::recall:
        return r.recall;
    case MetricId::c_precision:
        return r.c_precision;
    case MetricId::c_recall:
        return r.c_recall;
    case MetricId::sym_precision:
        return r.sym_precision;
    case MetricId::sym_recall:
        return r.sym_recall;
    }
    return 0.0;
}

/// Which quantity the x axis of a sweep holds.
enum class SweepAxis { radius, scale };

struct SweepRecord {
    std::string family;
    std::size_t d = 0; // unused (0) for scale sweeps
    double x = 0.0;    // radius factor r, or scale factor s
    std::size_t trial = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    MetricReport metrics;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::radius;
    std::vector<SweepRecord> records;
};

struct SweepConfig {
    SupportFamily family = SupportFamily::sphere_surface;
    std::vector<std::size_t> dims = {2, 4, 8, 16, 32, 64, 128, 256, 512};
    std::vector<double> radii = parse_grid("0.5:1.5:0.05");
    std::size_t n = 10000;
    std::size_t k = default_k;
    std::size_t trials = 5;
    std::uint64_t seed = 0;

    void validate() const {
        if (family == SupportFamily::ball) {
            throw ConfigError("sweep family must be sphere_surface, cube_surface or gaussian");
        }
        if (dims.empty()) {
            throw ConfigError("sweep needs at least one dimension");
        }
        if (radii.empty()) {
            throw ConfigError("sweep needs at least one radius");
        }
        for (const auto d : dims) {
            if (d == 0) {
                throw ConfigError("sweep dimensions must be positive");
            }
        }
        for (const double r : radii) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw ConfigError("sweep radii must be positive and finite");
            }
        }
        if (k == 0) {
            throw ConfigError("k must be positive");
        }
        if (n <= k) {
            throw ConfigError("n (" + std::to_string(n) + ") must exceed k (" + std::to_string(k) + ")");
        }
        if (trials == 0) {
            throw ConfigError("trials must be at least 1");
        }
    }
};

/// Substream for one synthetic grid point.
inline RngSpec grid_stream(std::uint64_t seed, std::size_t d, double r, std::size_t trial) {
    return RngSpec{seed, 0}.derive({static_cast<std::uint64_t>(d), tag_of(r), static_cast<std::uint64_t>(trial)});
}

inline void sort_records(SweepResult& result) {
    std::stable_sort(result.records.begin(), result.records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        if (a.d != b.d) {
            return a.d < b.d;
        }
        if (a.x != b.x) {
            return a.x < b.x;
        }
        return a.trial < b.trial;
    });
}

/**
 * Runs the full (dims x radii x trials) grid. Every grid point draws its
 * own pair on grid_stream(seed, d, r, trial); records are sorted by
 * (d, r, trial).
 */
inline SweepResult run_synthetic_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult result{SweepAxis::radius, {}};
    result.records.reserve(cfg.dims.size() * cfg.radii.size() * cfg.trials);
    const std::string family{to_string(cfg.family)};
    for (const auto d : cfg.dims) {
        for (const double r : cfg.radii) {
            for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
                try {
                    const auto [real, gen] = scaled_pair(cfg.family, d, r, cfg.n, grid_stream(cfg.seed, d, r, trial));
                    result.records.push_back({family, d, r, trial, cfg.n, cfg.k, evaluate_suite(real, gen, cfg.k)});
                } catch (const Error& e) {
                    rethrow_with_context(e, "grid point family=" + family + " d=" + std::to_string(d) +
                                                " r=" + std::to_string(r) + " trial=" + std::to_string(trial));
                }
            }
        }
    }
    sort_records(result);
    return result;
}

/// Scales the generated cloud about its mean by each s and evaluates it against the untouched real cloud.
template <class T, class U>
SweepResult feature_sweep(const BasicPointCloud<T>& real, const BasicPointCloud<U>& gen,
                          std::span<const double> s_grid, std::size_t k = default_k) {
    if (real.d() != gen.d()) {
        throw DimensionMismatch("feature sweep: real features have d=" + std::to_string(real.d()) +
                                ", generated have d=" + std::to_string(gen.d()));
    }
    SweepResult result{SweepAxis::scale, {}};
    const auto mean = column_mean(gen);
    for (const double s : s_grid) {
        try {
            const auto scaled = scale_about(gen, s, mean);
            result.records.push_back({"feature", 0, s, 0, gen.n(), k, evaluate_suite(real, scaled, k)});
        } catch (const Error& e) {
            rethrow_with_context(e, "feature sweep s=" + std::to_string(s));
        }
    }
    sort_records(result);
    return result;
}

/// Adjusts the contrast of `images` by each s, embeds them, and evaluates against `real`.
template <class T>
SweepResult contrast_sweep(const ImageTensor& images, const BasicPointCloud<T>& real, std::span<const double> s_grid,
                           std::size_t embed_dim, std::size_t k, std::uint64_t seed) {
    if (real.d() != embed_dim) {
        throw DimensionMismatch("contrast sweep: real features have d=" + std::to_string(real.d()) +
                                " but embed_dim=" + std::to_string(embed_dim));
    }
    SweepResult result{SweepAxis::scale, {}};
    for (const double s : s_grid) {
        try {
            const auto gen = random_embed(adjust_contrast(images, s), embed_dim, embedding_stream(seed));
            result.records.push_back({"contrast", 0, s, 0, gen.n(), k, evaluate_suite(real, gen, k)});
        } catch (const Error& e) {
            rethrow_with_context(e, "contrast sweep s=" + std::to_string(s));
        }
    }
    sort_records(result);
    return result;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), end);
}

inline std::string csv_header(SweepAxis axis) {
    std::string h = axis == SweepAxis::radius ? "family,d,r,trial,n,k" : "family,s,trial,n,k";
    for (const auto m : all_metrics) {
        h += ',';
        h += to_string(m);
    }
    return h;
}

inline std::string to_csv(const SweepResult& result) {
    std::string out = csv_header(result.axis) + "\n";
    for (const auto& rec : result.records) {
        out += rec.family;
        if (result.axis == SweepAxis::radius) {
            out += ',' + std::to_string(rec.d);
        }
        out += ',' + format_double(rec.x) + ',' + std::to_string(rec.trial) + ',' + std::to_string(rec.n) + ',' +
               std::to_string(rec.k);
        for (const auto m : all_metrics) {
            out += ',' + format_double(metric_value(rec.metrics, m));
        }
        out += '\n';
    }
    return out;
}

inline void write_csv(const SweepResult& result, const std::string& path) { detail::write_file(path, to_csv(result)); }

namespace detail {

inline std::size_t parse_count(std::string_view text) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    for (;;) {
        const auto pos = line.find(sep, begin);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(begin));
            return out;
        }
        out.push_back(line.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

} // namespace detail

/// Parses CSV produced by to_csv. Errors report the byte offset of the offending line.
inline SweepResult parse_csv(std::string_view text, const std::string& context = "csv") {
    SweepResult result;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const std::size_t line_offset = pos;
        pos = eol + 1;
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line == csv_header(SweepAxis::radius)) {
                result.axis = SweepAxis::radius;
            } else if (line == csv_header(SweepAxis::scale)) {
                result.axis = SweepAxis::scale;
            } else {
                throw FormatError(context + ": unrecognised CSV header", line_offset);
            }
            header_seen = true;
            continue;
        }
        const auto fields = detail::split(line, ',');
        const std::size_t expected = result.axis == SweepAxis::radius ? 12 : 11;
        if (fields.size() != expected) {
            throw FormatError(context + ": expected " + std::to_string(expected) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_offset);
        }
        try {
            SweepRecord rec;
            std::size_t f = 0;
            rec.family = std::string(fields[f++]);
            if (result.axis == SweepAxis::radius) {
                rec.d = detail::parse_count(fields[f++]);
            }
            rec.x = parse_double(fields[f++]);
            rec.trial = detail::parse_count(fields[f++]);
            rec.n = detail::parse_count(fields[f++]);
            rec.k = detail::parse_count(fields[f++]);
            auto& m = rec.metrics;
            m.precision = parse_double(fields[f++]);
            m.recall = parse_double(fields[f++]);
            m.c_precision = parse_double(fields[f++]);
            m.c_recall = parse_double(fields[f++]);
            m.sym_precision = parse_double(fields[f++]);
            m.sym_recall = parse_double(fields[f++]);
            m.k = rec.k;
            m.n_real = rec.n;
            m.n_gen = rec.n;
            result.records.push_back(std::move(rec));
        } catch (const ConfigError& e) {
            throw FormatError(context + ": " + e.what(), line_offset);
        }
    }
    if (!header_seen) {
        throw FormatError(context + ": missing CSV header", 0);
    }
    return result;
}

inline SweepResult read_csv(const std::string& path) {
    const auto bytes = detail::read_file(path);
    return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), path);
}

// ---------------------------------------------------------------------------
// File-level drivers

inline SweepResult run_feature_sweep(const std::string& real_path, const std::string& gen_path,
                                     std::span<const double> s_grid, std::size_t k, const std::string& out_path) {
    const auto real = read_features(real_path);
    const auto gen = read_features(gen_path);
    auto result = feature_sweep(real, gen, s_grid, k);
    if (!out_path.empty()) {
        write_csv(result, out_path);
    }
    return result;
}

inline SweepResult run_contrast_sweep(const std::string& images_path, const std::string& real_feats_path,
                                      std::span<const double> s_grid, std::size_t embed_dim, std::size_t k,
                                      std::uint64_t seed, const std::string& out_path) {
    const auto images = read_images(images_path);
    const auto real = read_features(real_feats_path);
    auto result = contrast_sweep(images, real, s_grid, embed_dim, k, seed);
    if (!out_path.empty()) {
        write_csv(result, out_path);
    }
    return result;
}

} // namespace genpr

#endif
