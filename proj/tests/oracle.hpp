// Naive reference implementations used as test oracles. Deliberately
// independent of the library: nested vectors, one accumulator, full sorts.
#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        s += (a[m] - b[m]) * (a[m] - b[m]);
    }
    return s;
}

inline double kth_sq_radius(const Rows& x, std::size_t i, std::size_t k) {
    std::vector<double> ds;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j != i) {
            ds.push_back(sq_dist(x[i], x[j]));
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds[k - 1];
}

// Points of `queries` inside some ball of `centers`.
inline std::size_t covered(const Rows& centers, std::size_t k, const Rows& queries) {
    std::size_t count = 0;
    for (const auto& q : queries) {
        bool in = false;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (sq_dist(q, centers[i]) <= kth_sq_radius(centers, i, k)) {
                in = true;
            }
        }
        count += in ? 1 : 0;
    }
    return count;
}

// Balls of `centers` containing some point of `targets`.
inline std::size_t hit(const Rows& centers, std::size_t k, const Rows& targets) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double r2 = kth_sq_radius(centers, i, k);
        bool any = false;
        for (const auto& t : targets) {
            if (sq_dist(t, centers[i]) <= r2) {
                any = true;
            }
        }
        count += any ? 1 : 0;
    }
    return count;
}

struct Report {
    double precision, recall, c_precision, c_recall, sym_precision, sym_recall;
};

inline Report evaluate(const Rows& real, const Rows& gen, std::size_t k) {
    Report r{};
    const double nr = static_cast<double>(real.size());
    const double ng = static_cast<double>(gen.size());
    r.precision = static_cast<double>(covered(real, k, gen)) / ng;
    r.recall = static_cast<double>(covered(gen, k, real)) / nr;
    r.c_precision = static_cast<double>(hit(gen, k, real)) / ng;
    r.c_recall = static_cast<double>(hit(real, k, gen)) / nr;
    r.sym_precision = std::min(r.precision, r.c_precision);
    r.sym_recall = std::min(r.recall, r.c_recall);
    return r;
}

// Random rows; with `lattice` the coordinates are small integers, so
// distances are exact and ties are common.
inline Rows random_rows(std::mt19937_64& gen, std::size_t n, std::size_t d, bool lattice) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> small(-2, 2);
    Rows rows(n, std::vector<double>(d));
    for (auto& row : rows) {
        for (auto& v : row) {
            v = lattice ? small(gen) : normal(gen);
        }
    }
    return rows;
}

} // namespace oracle
