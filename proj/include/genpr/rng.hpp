#ifndef GENPR_RNG_HPP
#define GENPR_RNG_HPP

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <utility>

namespace genpr {

/**
 * Identifies one reproducible random stream: a 64-bit seed (the Philox key)
 * and a 64-bit substream id (the upper half of the Philox counter).
 *
 * Substreams for independent pieces of work are derived with `derive`,
 * which hashes tags into the stream id with SplitMix64 finalization.
 */
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr RngSpec derive(std::uint64_t tag) const noexcept {
        return RngSpec{seed, mix64(mix64(stream) ^ tag)};
    }

    constexpr RngSpec derive(std::initializer_list<std::uint64_t> tags) const noexcept {
        RngSpec out = *this;
        for (auto t : tags) {
            out = out.derive(t);
        }
        return out;
    }

    friend constexpr bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// Bit pattern of a double, for use as a derivation tag.
inline std::uint64_t tag_of(double x) noexcept {
    if (x == 0.0) {
        x = 0.0; // fold -0.0
    }
    return std::bit_cast<std::uint64_t>(x);
}

/**
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * Round multipliers 0xD2511F53 / 0xCD9E8D57, Weyl key increments
 * 0x9E3779B9 / 0xBB67AE85. The 128-bit counter is (block index, stream id);
 * the 64-bit key is the seed. Output is a pure function of (seed, stream,
 * position), so results do not depend on platform or library version.
 */
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using block_type = std::array<std::uint32_t, 4>;

    explicit Philox4x32(RngSpec spec) noexcept : spec_(spec) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    static constexpr block_type bijection(block_type ctr, std::array<std::uint32_t, 2> key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9U;
                key[1] += 0xBB67AE85U;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53U} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57U} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    result_type operator()() noexcept {
        if (lane_ == 2) {
            refill();
        }
        return buffer_[lane_++];
    }

    /// Uniform double on the open interval (0, 1), 53 bits of resolution.
    double uniform() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double on the open interval (lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Full 128-bit product as {high, low}.
    static constexpr std::pair<std::uint64_t, std::uint64_t> mul_wide(std::uint64_t a, std::uint64_t b) noexcept {
        const std::uint64_t a_lo = a & 0xFFFFFFFFu, a_hi = a >> 32;
        const std::uint64_t b_lo = b & 0xFFFFFFFFu, b_hi = b >> 32;
        const std::uint64_t ll = a_lo * b_lo, lh = a_lo * b_hi, hl = a_hi * b_lo, hh = a_hi * b_hi;
        const std::uint64_t mid = (ll >> 32) + (lh & 0xFFFFFFFFu) + (hl & 0xFFFFFFFFu);
        return {hh + (lh >> 32) + (hl >> 32) + (mid >> 32), (mid << 32) | (ll & 0xFFFFFFFFu)};
    }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound) noexcept {
        for (;;) {
            const auto [high, low] = mul_wide((*this)(), bound);
            if (low >= bound || low >= (0 - bound) % bound) {
                return high;
            }
        }
    }

    /// Standard normal variate by Marsaglia's polar method; variates come in pairs.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    const RngSpec& spec() const noexcept { return spec_; }

private:
    void refill() noexcept {
        const block_type ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                             static_cast<std::uint32_t>(spec_.stream), static_cast<std::uint32_t>(spec_.stream >> 32)};
        const auto out = bijection(ctr, {static_cast<std::uint32_t>(spec_.seed),
                                         static_cast<std::uint32_t>(spec_.seed >> 32)});
        buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        ++block_;
        lane_ = 0;
    }

    RngSpec spec_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int lane_ = 2;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace genpr

#endif
