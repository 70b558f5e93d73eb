#ifndef GENPR_CAPS_HPP
#define GENPR_CAPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "knn_geometry.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "samplers.hpp"
#include "special.hpp"

/**
 * @file caps.hpp
 *
 * Hyperspherical cap measures and Monte Carlo checks of nearest-neighbor
 * distance concentration on the unit sphere.
 *
 * A cap at colatitude phi is the smaller piece of a d-ball cut by a
 * hyperplane at distance R cos(phi) from the centre. As fractions of the
 * whole ball (volume) or whole sphere (area):
 *
 *   V_cap / V_d = 1/2 I_{sin^2 phi}((d+1)/2, 1/2)
 *   A_cap / A_d = 1/2 I_{sin^2 phi}((d-1)/2, 1/2)
 */

namespace genpr {

struct CapQuery {
    std::size_t d = 2;
    double phi = std::numbers::pi / 2;

    void validate() const {
        if (d < 2) {
            throw DomainError("cap query: d must be at least 2, got " + std::to_string(d));
        }
        if (!(phi > 0.0 && phi <= std::numbers::pi / 2)) {
            throw DomainError("cap query: phi must lie in (0, pi/2], got " + std::to_string(phi));
        }
    }
};

enum class CapMeasure { volume, area };

inline double cap_volume_fraction(const CapQuery& q) {
    q.validate();
    const double s = std::sin(q.phi);
    return 0.5 * reg_inc_beta(s * s, (static_cast<double>(q.d) + 1.0) / 2.0, 0.5);
}

inline double cap_area_fraction(const CapQuery& q) {
    q.validate();
    const double s = std::sin(q.phi);
    return 0.5 * reg_inc_beta(s * s, (static_cast<double>(q.d) - 1.0) / 2.0, 0.5);
}

/// Leading constant of cap_fraction_approx: 1 / sqrt(2 pi) = 1 / (sqrt(2) Gamma(1/2)).
inline constexpr double cap_approx_constant = 0.3989422804014327;

/**
 * Large-d approximation of the cap fraction,
 *
 *   C * sqrt(sin(phi)^(2m) / m),  m = d + 1 (volume) or d - 1 (area),
 *
 * from I_x(a, 1/2) ~ x^a / (a B(a, 1/2)) with B(a, 1/2) ~ Gamma(1/2) a^(-1/2).
 * The dropped factor (1 - sin^2 phi)^(-1/2) = 1/cos(phi) means the result
 * underestimates the exact fraction by roughly cos(phi); use it for trends,
 * not values. Requires sin(phi) < 1.
 */
inline double cap_fraction_approx(const CapQuery& q, CapMeasure measure) {
    q.validate();
    const double s = std::sin(q.phi);
    if (!(s < 1.0)) {
        throw DomainError("cap_fraction_approx: approximation needs sin(phi) < 1");
    }
    const double m = measure == CapMeasure::volume ? static_cast<double>(q.d) + 1.0 : static_cast<double>(q.d) - 1.0;
    return cap_approx_constant * std::exp(m * std::log(s) - 0.5 * std::log(m));
}

enum class NnEvent {
    /// Some point's nearest neighbor is at distance >= t.
    min_exceeds,
    /// Every point's farthest neighbor is at distance <= t.
    max_below,
};

inline std::string_view to_string(NnEvent e) noexcept {
    return e == NnEvent::min_exceeds ? "min_exceeds" : "max_below";
}

struct EventEstimate {
    double frequency = 0.0;
    std::size_t hits = 0;
    std::size_t trials = 0;
    std::size_t n = 0;
    std::size_t d = 0;
    double threshold_factor = 0.0;
};

/// Nearest and farthest neighbor distances of every row of a cloud.
struct NeighborExtremes {
    std::vector<double> nearest;
    std::vector<double> farthest;
};

template <class T>
NeighborExtremes neighbor_extremes(const BasicPointCloud<T>& x) {
    const std::size_t n = x.n();
    if (n < 2) {
        throw InsufficientSamples("neighbor_extremes: need at least 2 points");
    }
    std::vector<double> lo(n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = x.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sq = detail::squared_distance(xi, x.row(j));
            lo[i] = std::min(lo[i], sq);
            lo[j] = std::min(lo[j], sq);
            hi[i] = std::max(hi[i], sq);
            hi[j] = std::max(hi[j], sq);
        }
    }
    NeighborExtremes out{std::move(lo), std::move(hi)};
    for (auto& v : out.nearest) {
        v = std::sqrt(v);
    }
    for (auto& v : out.farthest) {
        v = std::sqrt(v);
    }
    return out;
}

namespace detail {

inline void check_nn_args(std::size_t n, double t, std::size_t trials) {
    if (n < 2) {
        throw InsufficientSamples("nearest-neighbor validator needs n >= 2, got " + std::to_string(n));
    }
    if (trials == 0) {
        throw DomainError("nearest-neighbor validator needs at least one trial");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("nearest-neighbor threshold must be finite and non-negative");
    }
}

// Runs fn(trial, extremes) for each trial on independent substreams.
template <class Fn>
void for_each_sphere_trial(std::size_t d, std::size_t n, std::size_t trials, RngSpec rng, Fn&& fn) {
    parallel_for_chunks(trials, 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t trial = begin; trial < end; ++trial) {
            const auto cloud = sample(SupportSpec{SupportFamily::sphere_surface, 1.0, d}, n, rng.derive(trial));
            fn(trial, neighbor_extremes(cloud));
        }
    });
}

} // namespace detail

/**
 * Monte Carlo frequency of a nearest/farthest-neighbor event over `trials`
 * independent draws of n uniform points on the unit (d-1)-sphere. Trial i
 * uses substream rng.derive(i).
 */
inline EventEstimate nn_distance_event(std::size_t d, std::size_t n, double t, NnEvent which, std::size_t trials,
                                       RngSpec rng) {
    detail::check_nn_args(n, t, trials);
    std::vector<std::uint8_t> hit(trials, 0);
    detail::for_each_sphere_trial(d, n, trials, rng, [&](std::size_t trial, const NeighborExtremes& ex) {
        if (which == NnEvent::min_exceeds) {
            hit[trial] = std::any_of(ex.nearest.begin(), ex.nearest.end(), [t](double v) { return v >= t; });
        } else {
            hit[trial] = std::all_of(ex.farthest.begin(), ex.farthest.end(), [t](double v) { return v <= t; });
        }
    });
    EventEstimate est;
    est.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
    est.trials = trials;
    est.n = n;
    est.d = d;
    est.threshold_factor = t;
    est.frequency = static_cast<double>(est.hits) / static_cast<double>(trials);
    return est;
}

/// Mean over trials of the fraction of points whose nearest neighbor is at distance >= t.
inline double nn_fraction(std::size_t d, std::size_t n, double t, std::size_t trials, RngSpec rng) {
    detail::check_nn_args(n, t, trials);
    std::vector<std::size_t> counts(trials, 0);
    detail::for_each_sphere_trial(d, n, trials, rng, [&](std::size_t trial, const NeighborExtremes& ex) {
        counts[trial] = static_cast<std::size_t>(
            std::count_if(ex.nearest.begin(), ex.nearest.end(), [t](double v) { return v >= t; }));
    });
    std::size_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(trials));
}

} // namespace genpr

#endif
