#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace inertia_lab {

/// Counter-based generator: output i of stream (seed, s) is
/// splitmix64(key(seed, s) + i * 0x9e3779b97f4a7c15). Streams are
/// independent of each other and of the order in which they are consumed,
/// so trial i always sees the same numbers regardless of threading.
class Rng {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    Rng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ (stream * kGamma + 0x632be59bd9b4e019ULL))) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() noexcept { return mix(key_ + (++counter_) * kGamma); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) noexcept { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) noexcept {
        __extension__ using u128 = unsigned __int128;
        const u128 p = static_cast<u128>(next()) * n;
        return static_cast<std::size_t>(p >> 64);
    }
    /// Uniform integer in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) noexcept { return lo + below(hi - lo + 1); }

    /// Standard normal via Box-Muller (one draw per pair).
    double normal() noexcept {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    template <class T>
    void shuffle(std::vector<T>& v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace inertia_lab
