#ifndef GENPR_TRANSFORMS_HPP
#define GENPR_TRANSFORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "point_cloud.hpp"
#include "rng.hpp"

namespace genpr {

/// A batch of 8-bit images, laid out count x height x width x channels.
struct ImageTensor {
    std::size_t count = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t image_size() const noexcept { return height * width * channels; }

    std::span<const std::uint8_t> image(std::size_t i) const noexcept {
        return {pixels.data() + i * image_size(), image_size()};
    }
    std::span<std::uint8_t> image(std::size_t i) noexcept { return {pixels.data() + i * image_size(), image_size()}; }

    void validate() const {
        if (count == 0 || height == 0 || width == 0 || channels == 0) {
            throw DomainError("image tensor dimensions must all be at least 1");
        }
        if (channels != 1 && channels != 3) {
            throw DomainError("image tensor must have 1 or 3 channels, got " + std::to_string(channels));
        }
        if (pixels.size() != count * image_size()) {
            throw DomainError("image tensor holds " + std::to_string(pixels.size()) + " bytes, expected " +
                              std::to_string(count * image_size()));
        }
    }

    friend bool operator==(const ImageTensor&, const ImageTensor&) = default;
};

/// Per-coordinate sample mean.
template <class T>
std::vector<double> column_mean(const BasicPointCloud<T>& x) {
    std::vector<double> mean(x.d(), 0.0);
    for (std::size_t i = 0; i < x.n(); ++i) {
        const auto row = x.row(i);
        for (std::size_t j = 0; j < x.d(); ++j) {
            mean[j] += static_cast<double>(row[j]);
        }
    }
    for (auto& m : mean) {
        m /= static_cast<double>(x.n());
    }
    return mean;
}

/// Row-wise s * (x - center) + center.
template <class T>
PointCloud scale_about(const BasicPointCloud<T>& x, double s, std::span<const double> center) {
    if (center.size() != x.d()) {
        throw DimensionMismatch("scale_about: center has dimension " + std::to_string(center.size()) +
                                ", cloud has " + std::to_string(x.d()));
    }
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("scale factor must be finite and non-negative");
    }
    if (s == 1.0) {
        return x.template cast<double>();
    }
    PointCloud out(x.n(), x.d());
    for (std::size_t i = 0; i < x.n(); ++i) {
        const auto src = x.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < x.d(); ++j) {
            dst[j] = s * (static_cast<double>(src[j]) - center[j]) + center[j];
        }
    }
    return out;
}

/// Expands (s > 1) or contracts (s < 1) a cloud about its own sample mean.
template <class T>
PointCloud scale_about_mean(const BasicPointCloud<T>& x, double s) {
    const auto mean = column_mean(x);
    return scale_about(x, s, mean);
}

/**
 * Contrast adjustment per image and per channel:
 * p' = clamp(round(mean + s * (p - mean)), 0, 255), with the channel mean in
 * double precision and rounding half away from zero.
 */
inline ImageTensor adjust_contrast(const ImageTensor& images, double s) {
    images.validate();
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("contrast scale must be finite and non-negative");
    }
    ImageTensor out = images;
    const std::size_t c = images.channels;
    const std::size_t pixels_per_channel = images.height * images.width;
    parallel_for_chunks(images.count, 16, [&](std::size_t begin, std::size_t end) {
        std::vector<double> mean(c);
        for (std::size_t i = begin; i < end; ++i) {
            const auto src = images.image(i);
            auto dst = out.image(i);
            std::fill(mean.begin(), mean.end(), 0.0);
            for (std::size_t p = 0; p < src.size(); ++p) {
                mean[p % c] += src[p];
            }
            for (auto& m : mean) {
                m /= static_cast<double>(pixels_per_channel);
            }
            for (std::size_t p = 0; p < src.size(); ++p) {
                const double m = mean[p % c];
                const double v = std::round(m + s * (static_cast<double>(src[p]) - m));
                dst[p] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
        }
    });
    return out;
}

/**
 * A fixed random linear map R^in_dim -> R^out_dim with i.i.d.
 * normal(0, 1/in_dim) entries, drawn row by row from one stream.
 */
class RandomProjection {
public:
    RandomProjection(std::size_t in_dim, std::size_t out_dim, RngSpec rng)
        : in_dim_(in_dim), out_dim_(out_dim), weights_(in_dim * out_dim) {
        if (in_dim == 0 || out_dim == 0) {
            throw DomainError("random projection dimensions must be positive");
        }
        Philox4x32 gen(rng);
        const double sd = 1.0 / std::sqrt(static_cast<double>(in_dim));
        for (auto& w : weights_) {
            w = sd * gen.normal();
        }
    }

    std::size_t in_dim() const noexcept { return in_dim_; }
    std::size_t out_dim() const noexcept { return out_dim_; }

    void apply(std::span<const double> in, std::span<double> out) const {
        if (in.size() != in_dim_ || out.size() != out_dim_) {
            throw DimensionMismatch("random projection: expected " + std::to_string(in_dim_) + " -> " +
                                    std::to_string(out_dim_));
        }
        for (std::size_t o = 0; o < out_dim_; ++o) {
            const double* w = weights_.data() + o * in_dim_;
            double acc = 0.0;
            for (std::size_t j = 0; j < in_dim_; ++j) {
                acc += w[j] * in[j];
            }
            out[o] = acc;
        }
    }

    std::vector<double> apply(std::span<const double> in) const {
        std::vector<double> out(out_dim_);
        apply(in, out);
        return out;
    }

private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<double> weights_;
};

/// Stream used for the projection matrix in contrast sweeps and the `embed` tool command.
inline RngSpec embedding_stream(std::uint64_t seed) noexcept { return RngSpec{seed, 0}.derive(0x656D626564ULL); }

/// Flattens each image to [0, 1] values and projects it with RandomProjection(h*w*c, out_dim, rng).
inline PointCloud random_embed(const ImageTensor& images, std::size_t out_dim, RngSpec rng) {
    images.validate();
    const RandomProjection projection(images.image_size(), out_dim, rng);
    PointCloud out(images.count, out_dim);
    parallel_for_chunks(images.count, 16, [&](std::size_t begin, std::size_t end) {
        std::vector<double> flat(images.image_size());
        for (std::size_t i = begin; i < end; ++i) {
            const auto img = images.image(i);
            for (std::size_t p = 0; p < flat.size(); ++p) {
                flat[p] = static_cast<double>(img[p]) / 255.0;
            }
            projection.apply(flat, out.row(i));
        }
    });
    return out;
}

} // namespace genpr

#endif
