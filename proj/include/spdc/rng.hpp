#ifndef SPDC_RNG_HPP
#define SPDC_RNG_HPP

#include <cstdint>

namespace spdc {

// Disorder draws use a fixed, documented generator so that runs are
// reproducible bit-for-bit from (master_seed, substream indices) alone,
// independent of thread count or call order. The scheme is identified in run
// manifests as "splitmix64-v1":
//
//   * SplitMix64 is Vigna's 64-bit mixer (period 2^64).
//   * substream_seed(master, index) folds the index into the master seed via
//     an odd multiplicative constant and applies two scramble steps, giving
//     statistically independent streams for ensembles and sweep rows.
//   * Uniform doubles take the top 53 bits of one output word.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [-half_width, +half_width].
    double next_symmetric(double half_width) {
        return half_width * (2.0 * next_unit() - 1.0);
    }
};

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xA0761D6478BD642FULL * (index + 1)));
    g.next();
    return g.next();
}

inline constexpr const char* kRngSchemeId = "splitmix64-v1";

} // namespace spdc

#endif
