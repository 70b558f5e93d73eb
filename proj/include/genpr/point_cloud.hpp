#ifndef GENPR_POINT_CLOUD_HPP
#define GENPR_POINT_CLOUD_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace genpr {

/**
 * An n-by-d matrix of finite coordinates, stored row-major. Each row is one
 * sample (an embedding or a synthetic point).
 *
 * Clouds are never empty: construction rejects n == 0, d == 0 and any
 * non-finite entry.
 */
template <std::floating_point T>
class BasicPointCloud {
public:
    using value_type = T;

    BasicPointCloud(std::size_t n, std::size_t d) : n_(n), d_(d), data_(checked_size(n, d), T(0)) {}

    BasicPointCloud(std::size_t n, std::size_t d, std::vector<T> data) : n_(n), d_(d), data_(std::move(data)) {
        if (data_.size() != checked_size(n, d)) {
            throw DomainError("point cloud buffer holds " + std::to_string(data_.size()) + " values, expected " +
                              std::to_string(n) + "x" + std::to_string(d));
        }
        validate_finite();
    }

    /// Builds a cloud from explicit rows; all rows must have the same length.
    static BasicPointCloud from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) {
            throw DomainError("point cloud needs at least one row");
        }
        const std::size_t d = rows.front().size();
        std::vector<T> flat;
        flat.reserve(rows.size() * d);
        for (const auto& row : rows) {
            if (row.size() != d) {
                throw DimensionMismatch("ragged rows: expected length " + std::to_string(d) + ", got " +
                                        std::to_string(row.size()));
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return BasicPointCloud(rows.size(), d, std::move(flat));
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }

    std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * d_, d_}; }
    std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * d_, d_}; }

    T operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * d_ + j]; }
    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * d_ + j]; }

    std::span<const T> values() const noexcept { return data_; }
    std::span<T> values() noexcept { return data_; }

    /// Throws DomainError if any coordinate is NaN or infinite.
    void validate_finite() const {
        for (std::size_t idx = 0; idx < data_.size(); ++idx) {
            if (!std::isfinite(data_[idx])) {
                throw DomainError("non-finite coordinate at row " + std::to_string(idx / d_) + ", column " +
                                  std::to_string(idx % d_));
            }
        }
    }

    /// Rows [begin, end) as a new cloud.
    BasicPointCloud slice(std::size_t begin, std::size_t end) const {
        return BasicPointCloud(end - begin, d_,
                               std::vector<T>(data_.begin() + begin * d_, data_.begin() + end * d_));
    }

    template <std::floating_point U>
    BasicPointCloud<U> cast() const {
        return BasicPointCloud<U>(n_, d_, std::vector<U>(data_.begin(), data_.end()));
    }

    friend bool operator==(const BasicPointCloud&, const BasicPointCloud&) = default;

private:
    static std::size_t checked_size(std::size_t n, std::size_t d) {
        if (n == 0 || d == 0) {
            throw DomainError("point cloud must have n >= 1 and d >= 1 (got " + std::to_string(n) + "x" +
                              std::to_string(d) + ")");
        }
        if (n > data_max() / d) {
            throw DomainError("point cloud size overflows");
        }
        return n * d;
    }

    static constexpr std::size_t data_max() { return static_cast<std::size_t>(-1) / sizeof(T); }

    std::size_t n_;
    std::size_t d_;
    std::vector<T> data_;
};

using PointCloud = BasicPointCloud<double>;
using PointCloudF = BasicPointCloud<float>;

} // namespace genpr

#endif
