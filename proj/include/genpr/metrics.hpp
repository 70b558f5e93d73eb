#ifndef GENPR_METRICS_HPP
#define GENPR_METRICS_HPP

#include <algorithm>
#include <cstddef>
#include <string>

#include "knn_geometry.hpp"
#include "point_cloud.hpp"

/**
 * @file metrics.hpp
 *
 * k-NN manifold metrics for comparing a real sample set with a generated one.
 *
 *  - precision:   fraction of generated points inside the real k-NN support.
 *  - recall:      fraction of real points inside the generated k-NN support.
 *  - c_precision: fraction of generated points whose k-NN ball holds a real point.
 *  - c_recall:    fraction of real points whose k-NN ball holds a generated point
 *                 (also known as Coverage).
 *  - sym_*:       min of a metric and its complement.
 *
 * Values are integer counts divided by the cloud size, so they are exact
 * rationals rounded once.
 */

namespace genpr {

inline constexpr std::size_t default_k = 5;

struct MetricReport {
    double precision = 0.0;
    double recall = 0.0;
    double c_precision = 0.0;
    double c_recall = 0.0;
    double sym_precision = 0.0;
    double sym_recall = 0.0;
    std::size_t n_real = 0;
    std::size_t n_gen = 0;
    std::size_t k = 0;

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Raw integer counts behind a MetricReport.
struct MetricCounts {
    std::size_t gen_in_real_support = 0;   // precision numerator
    std::size_t real_in_gen_support = 0;   // recall numerator
    std::size_t gen_balls_hit = 0;         // c_precision numerator
    std::size_t real_balls_hit = 0;        // c_recall numerator
    std::size_t n_real = 0;
    std::size_t n_gen = 0;
    std::size_t k = 0;

    MetricReport report() const {
        MetricReport r;
        r.n_real = n_real;
        r.n_gen = n_gen;
        r.k = k;
        r.precision = static_cast<double>(gen_in_real_support) / static_cast<double>(n_gen);
        r.recall = static_cast<double>(real_in_gen_support) / static_cast<double>(n_real);
        r.c_precision = static_cast<double>(gen_balls_hit) / static_cast<double>(n_gen);
        r.c_recall = static_cast<double>(real_balls_hit) / static_cast<double>(n_real);
        r.sym_precision = std::min(r.precision, r.c_precision);
        r.sym_recall = std::min(r.recall, r.c_recall);
        return r;
    }
};

template <class T, class U>
double precision(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen, std::size_t k = default_k) {
    detail::require_same_dim(x_real.d(), x_gen.d(), "precision");
    const auto real_support = knn_radii(x_real, k);
    return static_cast<double>(covered_count(real_support, x_gen)) / static_cast<double>(x_gen.n());
}

template <class T, class U>
double recall(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen, std::size_t k = default_k) {
    detail::require_same_dim(x_real.d(), x_gen.d(), "recall");
    const auto gen_support = knn_radii(x_gen, k);
    return static_cast<double>(covered_count(gen_support, x_real)) / static_cast<double>(x_real.n());
}

template <class T, class U>
double c_precision(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen, std::size_t k = default_k) {
    detail::require_same_dim(x_real.d(), x_gen.d(), "c_precision");
    const auto gen_support = knn_radii(x_gen, k);
    return static_cast<double>(neighborhoods_hit_count(gen_support, x_real)) / static_cast<double>(x_gen.n());
}

template <class T, class U>
double c_recall(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen, std::size_t k = default_k) {
    detail::require_same_dim(x_real.d(), x_gen.d(), "c_recall");
    const auto real_support = knn_radii(x_real, k);
    return static_cast<double>(neighborhoods_hit_count(real_support, x_gen)) / static_cast<double>(x_real.n());
}

/// All four counts, building each cloud's k-NN support once.
template <class T, class U>
MetricCounts evaluate_counts(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen,
                             std::size_t k = default_k) {
    detail::require_same_dim(x_real.d(), x_gen.d(), "evaluate_suite");
    if (k >= std::min(x_real.n(), x_gen.n())) {
        throw InsufficientSamples("evaluate_suite: k = " + std::to_string(k) + " but clouds have " +
                                  std::to_string(x_real.n()) + " real and " + std::to_string(x_gen.n()) +
                                  " generated points");
    }
    const auto real_support = knn_radii(x_real, k);
    const auto gen_support = knn_radii(x_gen, k);

    MetricCounts c;
    c.n_real = x_real.n();
    c.n_gen = x_gen.n();
    c.k = k;
    c.gen_in_real_support = covered_count(real_support, x_gen);
    c.real_in_gen_support = covered_count(gen_support, x_real);
    c.gen_balls_hit = neighborhoods_hit_count(gen_support, x_real);
    c.real_balls_hit = neighborhoods_hit_count(real_support, x_gen);
    return c;
}

template <class T, class U>
MetricReport evaluate_suite(const BasicPointCloud<T>& x_real, const BasicPointCloud<U>& x_gen,
                            std::size_t k = default_k) {
    return evaluate_counts(x_real, x_gen, k).report();
}

} // namespace genpr

#endif
