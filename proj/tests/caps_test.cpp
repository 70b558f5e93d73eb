#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <genpr/caps.hpp>

namespace {

using genpr::CapMeasure;
using genpr::CapQuery;
using genpr::NnEvent;
constexpr double half_pi = std::numbers::pi / 2;

TEST(CapVolume, Hemisphere) {
    for (std::size_t d = 2; d <= 512; ++d) {
        ASSERT_NEAR(genpr::cap_volume_fraction({d, half_pi}), 0.5, 1e-12);
        ASSERT_NEAR(genpr::cap_area_fraction({d, half_pi}), 0.5, 1e-12);
    }
}

TEST(CapVolume, ClassicalThreeBall) {
    // pi h^2 (3R - h) / 3 over 4 pi R^3 / 3 with h = 1 - cos(pi/3) = 1/2
    EXPECT_NEAR(genpr::cap_volume_fraction({3, std::numbers::pi / 3}), 0.15625, 1e-12);
}

TEST(CapArea, CircleArc) {
    EXPECT_NEAR(genpr::cap_area_fraction({2, std::numbers::pi / 3}), 1.0 / 3.0, 1e-12);
    for (double phi : {0.1, 0.5, 1.2}) {
        EXPECT_NEAR(genpr::cap_area_fraction({2, phi}), phi / std::numbers::pi, 1e-12);
    }
}

TEST(CapArea, TwoSphereZone) {
    // Archimedes: area of a cap of height h on the unit 2-sphere is 2 pi h
    for (double phi : {0.3, 0.9, 1.4}) {
        EXPECT_NEAR(genpr::cap_area_fraction({3, phi}), (1.0 - std::cos(phi)) / 2.0, 1e-12);
    }
}

TEST(CapFractions, DecayWithDimension) {
    const double v32 = genpr::cap_volume_fraction({32, std::numbers::pi / 3});
    const double v64 = genpr::cap_volume_fraction({64, std::numbers::pi / 3});
    EXPECT_LT(v64, 1e-4);
    EXPECT_LT(v64, v32);
    EXPECT_LT(genpr::cap_area_fraction({256, 1.2}), genpr::cap_area_fraction({64, 1.2}));
    for (double phi : {0.4, 1.0, 1.5}) {
        double prev_v = 1.0, prev_a = 1.0;
        for (std::size_t d = 2; d <= 256; ++d) {
            const double v = genpr::cap_volume_fraction({d, phi});
            const double a = genpr::cap_area_fraction({d, phi});
            ASSERT_LT(v, prev_v) << d;
            ASSERT_LT(a, prev_a) << d;
            prev_v = v;
            prev_a = a;
        }
    }
}

TEST(CapFractions, IncreaseWithAngle) {
    for (std::size_t d : {2, 3, 8, 64, 300}) {
        double prev_v = 0.0, prev_a = 0.0;
        // tiny caps underflow to 0 in high dimension
        for (int i = d > 64 ? 20 : 1; i <= 100; ++i) {
            const double phi = half_pi * i / 100.0;
            const double v = genpr::cap_volume_fraction({d, phi});
            const double a = genpr::cap_area_fraction({d, phi});
            ASSERT_GT(v, prev_v);
            ASSERT_GT(a, prev_a);
            prev_v = v;
            prev_a = a;
        }
    }
}

// Rejection sampling from the cube: independent of the beta-function route.
TEST(CapVolume, MonteCarloAgreement) {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t d : {2, 4}) {
        for (double phi : {0.8, 1.2}) {
            const double plane = std::cos(phi);
            std::size_t inside = 0, in_cap = 0;
            std::vector<double> p(d);
            while (inside < 200000) {
                double r2 = 0.0;
                for (auto& v : p) {
                    v = u(gen);
                    r2 += v * v;
                }
                if (r2 <= 1.0) {
                    ++inside;
                    in_cap += p[0] >= plane;
                }
            }
            EXPECT_NEAR(static_cast<double>(in_cap) / inside, genpr::cap_volume_fraction({d, phi}), 5e-3)
                << "d=" << d << " phi=" << phi;
        }
    }
}

TEST(CapApprox, WithinFactorTwoAtHighDimension) {
    const double ratio = genpr::cap_fraction_approx({512, 1.0}, CapMeasure::volume) /
                         genpr::cap_volume_fraction({512, 1.0});
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
    const double area_ratio =
        genpr::cap_fraction_approx({512, 1.0}, CapMeasure::area) / genpr::cap_area_fraction({512, 1.0});
    EXPECT_GT(area_ratio, 0.5);
    EXPECT_LT(area_ratio, 2.0);
}

TEST(CapApprox, StrictlyDecreasingInDimension) {
    for (auto m : {CapMeasure::volume, CapMeasure::area}) {
        double prev = 1e300;
        for (std::size_t d = 2; d <= 600; ++d) {
            const double v = genpr::cap_fraction_approx({d, 1.1}, m);
            ASSERT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(CapApprox, InvalidAtRightAngle) {
    EXPECT_THROW(genpr::cap_fraction_approx({10, half_pi}, CapMeasure::volume), genpr::DomainError);
}

TEST(CapQuery, Validation) {
    EXPECT_THROW(genpr::cap_volume_fraction({1, 1.0}), genpr::DomainError);
    EXPECT_THROW(genpr::cap_volume_fraction({3, 0.0}), genpr::DomainError);
    EXPECT_THROW(genpr::cap_area_fraction({3, 2.0}), genpr::DomainError);
}

TEST(NnEvent, TrivialThresholds) {
    const genpr::RngSpec rng{1, 0};
    EXPECT_EQ(genpr::nn_distance_event(8, 50, 0.0, NnEvent::min_exceeds, 5, rng).frequency, 1.0);
    EXPECT_EQ(genpr::nn_distance_event(8, 50, 3.0, NnEvent::max_below, 5, rng).frequency, 1.0);
    EXPECT_EQ(genpr::nn_distance_event(8, 50, 2.5, NnEvent::min_exceeds, 5, rng).frequency, 0.0);
    EXPECT_EQ(genpr::nn_fraction(8, 50, 0.0, 5, rng), 1.0);
    EXPECT_EQ(genpr::nn_fraction(8, 50, 2.5, 5, rng), 0.0);
}

TEST(NnEvent, EstimateBookkeeping) {
    const auto est = genpr::nn_distance_event(16, 40, 1.2, NnEvent::min_exceeds, 7, {3, 0});
    EXPECT_EQ(est.trials, 7u);
    EXPECT_EQ(est.n, 40u);
    EXPECT_EQ(est.d, 16u);
    EXPECT_EQ(est.threshold_factor, 1.2);
    EXPECT_EQ(est.frequency * 7.0, static_cast<double>(est.hits));
}

TEST(NnEvent, ConcentrationTrend) {
    const genpr::RngSpec rng{4, 0};
    EXPECT_GE(genpr::nn_distance_event(256, 300, 1.2, NnEvent::min_exceeds, 10, rng).frequency, 0.9);
    EXPECT_LE(genpr::nn_distance_event(4, 300, 1.2, NnEvent::min_exceeds, 10, rng).frequency, 0.1);
}

TEST(NnFraction, NonincreasingInThresholdAndCount) {
    const genpr::RngSpec rng{5, 0};
    double prev = 1.0;
    for (double t : {0.0, 0.4, 0.8, 1.0, 1.2, 1.4, 1.6}) {
        const double f = genpr::nn_fraction(6, 200, t, 4, rng);
        EXPECT_LE(f, prev) << t;
        prev = f;
    }
    // more points crowd the sphere; averaged over trials the fraction drops
    EXPECT_GE(genpr::nn_fraction(6, 50, 0.8, 20, rng), genpr::nn_fraction(6, 400, 0.8, 20, rng));
}

TEST(NnEvent, Errors) {
    EXPECT_THROW(genpr::nn_fraction(4, 1, 1.0, 3, {}), genpr::InsufficientSamples);
    EXPECT_THROW(genpr::nn_distance_event(4, 1, 1.0, NnEvent::max_below, 3, {}), genpr::InsufficientSamples);
    EXPECT_THROW(genpr::nn_fraction(4, 10, 1.0, 0, {}), genpr::DomainError);
    EXPECT_THROW(genpr::nn_fraction(4, 10, -1.0, 2, {}), genpr::DomainError);
}

TEST(NeighborExtremes, SmallExample) {
    const auto x = genpr::PointCloud::from_rows({{0.0}, {1.0}, {3.0}});
    const auto ex = genpr::neighbor_extremes(x);
    EXPECT_EQ(ex.nearest, (std::vector<double>{1, 1, 2}));
    EXPECT_EQ(ex.farthest, (std::vector<double>{3, 2, 3}));
}

} // namespace
