#ifndef GENPR_KNN_GEOMETRY_HPP
#define GENPR_KNN_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "point_cloud.hpp"

/**
 * @file knn_geometry.hpp
 *
 * Brute-force Euclidean kernels behind the k-NN support estimate: blocked
 * squared distances, per-point k-th neighbor radii, and union-of-balls
 * membership counts. All accumulation is in double precision regardless of
 * the input scalar type; distances stay squared until radii are reported.
 */

namespace genpr {

inline constexpr std::size_t default_row_block = 256;

namespace detail {

template <class T, class U>
inline double squared_distance(std::span<const T> a, std::span<const U> b) noexcept {
    const std::size_t d = a.size();
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t m = 0;
    for (; m + 4 <= d; m += 4) {
        for (std::size_t lane = 0; lane < 4; ++lane) {
            const double diff = static_cast<double>(a[m + lane]) - static_cast<double>(b[m + lane]);
            acc[lane] += diff * diff;
        }
    }
    for (std::size_t lane = 0; m < d; ++m, ++lane) {
        const double diff = static_cast<double>(a[m]) - static_cast<double>(b[m]);
        acc[lane] += diff * diff;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

// Returns true iff squared_distance(a, b) <= bound. The partial sums of the
// four accumulators only grow, so bailing out once a partial total exceeds
// `bound` gives exactly the same decision as the full evaluation.
template <class T, class U>
inline bool within_squared(std::span<const T> a, std::span<const U> b, double bound) noexcept {
    const std::size_t d = a.size();
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t m = 0;
    while (m + 4 <= d) {
        const std::size_t stop = std::min(d - (d - m) % 4, m + 32);
        for (; m < stop; m += 4) {
            for (std::size_t lane = 0; lane < 4; ++lane) {
                const double diff = static_cast<double>(a[m + lane]) - static_cast<double>(b[m + lane]);
                acc[lane] += diff * diff;
            }
        }
        if ((acc[0] + acc[1]) + (acc[2] + acc[3]) > bound) {
            return false;
        }
    }
    for (std::size_t lane = 0; m < d; ++m, ++lane) {
        const double diff = static_cast<double>(a[m]) - static_cast<double>(b[m]);
        acc[lane] += diff * diff;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]) <= bound;
}

inline void require_same_dim(std::size_t da, std::size_t db, const char* what) {
    if (da != db) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(da) + " vs " + std::to_string(db));
    }
}

inline void require_positive_block(std::size_t row_block) {
    if (row_block == 0) {
        throw DomainError("row_block must be positive");
    }
}

} // namespace detail

/// Dense row-major matrix of squared distances.
struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * cols + j]; }
};

/// Squared Euclidean distances between every row of `a` and every row of `b`,
/// computed in blocks of at most `row_block` rows of `a`.
template <class T, class U>
DistanceMatrix pairwise_sq_dists(const BasicPointCloud<T>& a, const BasicPointCloud<U>& b,
                                 std::size_t row_block = default_row_block) {
    detail::require_same_dim(a.d(), b.d(), "pairwise_sq_dists");
    detail::require_positive_block(row_block);
    DistanceMatrix out{a.n(), b.n(), std::vector<double>(a.n() * b.n())};
    parallel_for_chunks(a.n(), row_block, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double* dst = out.values.data() + i * b.n();
            const auto ai = a.row(i);
            for (std::size_t j = 0; j < b.n(); ++j) {
                dst[j] = detail::squared_distance(ai, b.row(j));
            }
        }
    });
    return out;
}

/**
 * The k-NN estimate of a support: closed balls around every point of a
 * cloud, each reaching to that point's k-th nearest other point.
 */
template <class T>
struct BasicApproxSupport {
    BasicPointCloud<T> centers;
    std::vector<double> radii;
    std::vector<double> sq_radii;
    std::size_t k = 0;
};

using ApproxSupport = BasicApproxSupport<double>;

/**
 * Builds the k-NN support estimate of `x`. radius[i] is the distance from
 * x_i to its k-th nearest point among the other rows of `x`. Candidates are
 * ordered by (squared distance, row index).
 *
 * Rows are processed in blocks of `row_block`, so the working set is
 * row_block x n distances rather than n x n.
 */
template <class T>
BasicApproxSupport<T> knn_radii(const BasicPointCloud<T>& x, std::size_t k,
                                std::size_t row_block = default_row_block) {
    if (k == 0) {
        throw DomainError("knn_radii: k must be positive");
    }
    if (k >= x.n()) {
        throw InsufficientSamples("knn_radii: k = " + std::to_string(k) + " needs more than k points, cloud has " +
                                  std::to_string(x.n()));
    }
    detail::require_positive_block(row_block);

    const std::size_t n = x.n();
    BasicApproxSupport<T> support{x, std::vector<double>(n), std::vector<double>(n), k};
    parallel_for_chunks(n, row_block, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<double, std::size_t>> candidates(n - 1);
        for (std::size_t i = begin; i < end; ++i) {
            const auto xi = x.row(i);
            std::size_t c = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    candidates[c++] = {detail::squared_distance(xi, x.row(j)), j};
                }
            }
            std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k - 1),
                             candidates.end());
            const double sq = candidates[k - 1].first;
            support.sq_radii[i] = sq;
            support.radii[i] = std::sqrt(sq);
        }
    });
    return support;
}

/// Per-query membership flags for the union of balls (boundary inclusive).
template <class T, class U>
std::vector<std::uint8_t> covered_mask(const BasicApproxSupport<T>& support, const BasicPointCloud<U>& queries) {
    detail::require_same_dim(support.centers.d(), queries.d(), "covered_count");
    std::vector<std::uint8_t> mask(queries.n(), 0);
    const auto& centers = support.centers;
    parallel_for_chunks(queries.n(), 64, [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q) {
            const auto qr = queries.row(q);
            for (std::size_t i = 0; i < centers.n(); ++i) {
                if (detail::within_squared(qr, centers.row(i), support.sq_radii[i])) {
                    mask[q] = 1;
                    break;
                }
            }
        }
    });
    return mask;
}

/// Number of query rows that fall inside at least one ball of `support`.
template <class T, class U>
std::size_t covered_count(const BasicApproxSupport<T>& support, const BasicPointCloud<U>& queries) {
    const auto mask = covered_mask(support, queries);
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

/// Per-center flags: does ball i contain at least one target row?
template <class T, class U>
std::vector<std::uint8_t> neighborhoods_hit_mask(const BasicApproxSupport<T>& support,
                                                 const BasicPointCloud<U>& targets) {
    detail::require_same_dim(support.centers.d(), targets.d(), "neighborhoods_hit_count");
    const auto& centers = support.centers;
    std::vector<std::uint8_t> mask(centers.n(), 0);
    parallel_for_chunks(centers.n(), 64, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto ci = centers.row(i);
            for (std::size_t t = 0; t < targets.n(); ++t) {
                if (detail::within_squared(targets.row(t), ci, support.sq_radii[i])) {
                    mask[i] = 1;
                    break;
                }
            }
        }
    });
    return mask;
}

/// Number of balls of `support` that contain at least one target row.
template <class T, class U>
std::size_t neighborhoods_hit_count(const BasicApproxSupport<T>& support, const BasicPointCloud<U>& targets) {
    const auto mask = neighborhoods_hit_mask(support, targets);
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

} // namespace genpr

#endif
