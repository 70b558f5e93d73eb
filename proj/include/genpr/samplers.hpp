#ifndef GENPR_SAMPLERS_HPP
#define GENPR_SAMPLERS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"
#include "point_cloud.hpp"
#include "rng.hpp"

namespace genpr {

enum class SupportFamily {
    sphere_surface,
    ball,
    cube_surface,
    gaussian,
};

inline std::string_view to_string(SupportFamily f) noexcept {
    switch (f) {
    case SupportFamily::sphere_surface:
        return "sphere_surface";
    case SupportFamily::ball:
        return "ball";
    case SupportFamily::cube_surface:
        return "cube_surface";
    case SupportFamily::gaussian:
        return "gaussian";
    }
    return "unknown";
}

/// Accepts the canonical names plus the short forms "sphere" and "cube".
inline std::optional<SupportFamily> parse_family(std::string_view name) noexcept {
    if (name == "sphere_surface" || name == "sphere") {
        return SupportFamily::sphere_surface;
    }
    if (name == "ball") {
        return SupportFamily::ball;
    }
    if (name == "cube_surface" || name == "cube") {
        return SupportFamily::cube_surface;
    }
    if (name == "gaussian") {
        return SupportFamily::gaussian;
    }
    return std::nullopt;
}

/**
 * A synthetic support centred at the origin. `scale` is the radius for
 * sphere_surface and ball, the half edge length for cube_surface, and the
 * per-coordinate standard deviation for gaussian.
 */
struct SupportSpec {
    SupportFamily family = SupportFamily::sphere_surface;
    double scale = 1.0;
    std::size_t dim = 2;

    void validate() const {
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw DomainError("support scale must be positive and finite");
        }
        if (dim == 0) {
            throw DomainError("support dimension must be at least 1");
        }
    }
};

namespace detail {

inline void sample_unit_direction(Philox4x32& gen, std::span<double> out) {
    for (;;) {
        double sq = 0.0;
        for (auto& v : out) {
            v = gen.normal();
            sq += v * v;
        }
        if (sq > 0.0) {
            const double norm = std::sqrt(sq);
            for (auto& v : out) {
                v /= norm;
            }
            return;
        }
    }
}

} // namespace detail

/**
 * Draws n points from `spec`. Deterministic in (spec, n, rng).
 *
 *  - sphere_surface: normalised standard normal vector times R.
 *  - ball: sphere_surface point times R * U^(1/d).
 *  - cube_surface: one of the 2d faces uniformly, that coordinate fixed at
 *    +-h, the rest uniform on (-h, h).
 *  - gaussian: i.i.d. normal(0, sigma^2) coordinates.
 */
inline PointCloud sample(const SupportSpec& spec, std::size_t n, RngSpec rng) {
    spec.validate();
    if (n == 0) {
        throw DomainError("sample: n must be at least 1");
    }
    PointCloud cloud(n, spec.dim);
    Philox4x32 gen(rng);
    const double s = spec.scale;
    const double inv_dim = 1.0 / static_cast<double>(spec.dim);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = cloud.row(i);
        switch (spec.family) {
        case SupportFamily::sphere_surface:
            detail::sample_unit_direction(gen, row);
            for (auto& v : row) {
                v *= s;
            }
            break;
        case SupportFamily::ball: {
            detail::sample_unit_direction(gen, row);
            const double radius = s * std::pow(gen.uniform(), inv_dim);
            for (auto& v : row) {
                v *= radius;
            }
            break;
        }
        case SupportFamily::cube_surface: {
            const std::uint64_t face = gen.below(2 * spec.dim);
            for (auto& v : row) {
                v = gen.uniform(-s, s);
            }
            row[face / 2] = (face % 2 == 0) ? s : -s;
            break;
        }
        case SupportFamily::gaussian:
            for (auto& v : row) {
                v = s * gen.normal();
            }
            break;
        }
    }
    return cloud;
}

/**
 * A reference/generated pair for the radius experiments. The reference
 * cloud uses scale 1 (unit sphere, unit half-edge cube, standard normal);
 * the generated cloud is the same family scaled by r, except for gaussian,
 * where the generated cloud lies on the sphere of radius r * sqrt(d) around
 * which standard normal samples concentrate.
 *
 * The two clouds use the substreams rng.derive(0) and rng.derive(1).
 */
inline std::pair<PointCloud, PointCloud> scaled_pair(SupportFamily family, std::size_t d, double r, std::size_t n,
                                                     RngSpec rng) {
    if (family == SupportFamily::ball) {
        throw DomainError("scaled_pair: family must be sphere_surface, cube_surface or gaussian");
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("scaled_pair: radius factor must be positive and finite");
    }
    const SupportSpec reference{family, 1.0, d};
    SupportSpec generated{family, r, d};
    if (family == SupportFamily::gaussian) {
        generated = SupportSpec{SupportFamily::sphere_surface, r * std::sqrt(static_cast<double>(d)), d};
    }
    return {sample(reference, n, rng.derive(0)), sample(generated, n, rng.derive(1))};
}

} // namespace genpr

#endif
