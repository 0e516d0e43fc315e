#pragma once

#include <cstdint>
#include <utility>

namespace vortexhop {

// Counter-based generator built on the splitmix64 finalizer (Vigna 2015,
// after Steele/Lea/Flood's SplittableRandom). Output i of a stream keyed by
// `key` is mix64(key + (i+1)*GOLDEN_GAMMA), so streams support O(1) skip,
// carry no shared state, and two generators with the same (key, counter)
// produce identical sequences on any thread.
class CounterRng {
public:
    static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), counter_(counter) {}

    // splitmix64 finalizer: bijective, passes BigCrush in counter mode.
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent stream derived from (key, stream). Used to give every
    // trial / hop sequence its own generator so parallel partitioning cannot
    // change results.
    static CounterRng substream(std::uint64_t key, std::uint64_t stream) {
        return CounterRng(mix64(key ^ mix64(stream + kGoldenGamma)));
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGoldenGamma); }

    // Uniform in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_unit_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Lemire multiply-shift; the residual bias is
    // O(n / 2^64) and unobservable at any test size used here.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double next_exp(double mean);
    // Gamma(shape, scale) draw for integer shape: sum of `shape` exponentials.
    double next_gamma_int(int shape, double scale);
    // Pair of independent standard normals (Box-Muller).
    std::pair<double, double> next_gaussian_pair();

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace vortexhop
