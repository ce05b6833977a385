#pragma once

#include <cstdint>

namespace chuasync {

/// splitmix64 output finalizer (Steele/Lea/Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ULL;

// Counter-based access to the splitmix64 stream: draw_u64(seed, i) equals the
// (i+1)-th output of the sequentially stepped generator, so indexed draws can
// be evaluated in any order (or across threads) without changing the stream.
constexpr std::uint64_t draw_u64(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed + (index + 1) * kSplitmixGamma);
}

/// Uniform double in [0,1), from the top 53 bits.
constexpr double draw_unit(std::uint64_t seed, std::uint64_t index) noexcept {
    return static_cast<double>(draw_u64(seed, index) >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1,1).
constexpr double draw_symmetric(std::uint64_t seed, std::uint64_t index) noexcept {
    return 2.0 * draw_unit(seed, index) - 1.0;
}

/// Sequential view of the same stream; handy when order does not matter.
class Splitmix64 {
public:
    explicit constexpr Splitmix64(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t next_u64() noexcept { return draw_u64(seed_, index_++); }
    constexpr double next_unit() noexcept { return draw_unit(seed_, index_++); }
    constexpr double next_symmetric() noexcept { return draw_symmetric(seed_, index_++); }

    /// Uniform double in [lo, hi).
    constexpr double next_in(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_unit();
    }

private:
    std::uint64_t seed_;
    std::uint64_t index_ = 0;
};

} // namespace chuasync
