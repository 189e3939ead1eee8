#pragma once

#include <cstdint>

namespace erk {

/// SplitMix64 (Steele, Lea & Flood 2014). The state is a plain 64-bit counter
/// advanced by the golden-ratio increment; each output is the finalizer
/// applied to the new counter value. Streams are reproducible bit-for-bit on
/// any platform, which is why the standard distributions (whose algorithms are
/// implementation-defined) are never used on top of it.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    result_type operator()() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection sampling on the largest multiple
    /// of `bound`, so the result is exactly uniform. `bound` must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % bound;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

/// Child seed for stream `index` under `master`. Used for per-graph and
/// per-split streams so results do not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return SplitMix64::mix(master ^ SplitMix64::mix(index + 0x632be59bd9b4e019ULL));
}

}  // namespace erk
