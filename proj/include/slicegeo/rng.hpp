#pragma once

#include <cmath>
#include <cstdint>

#include "slicegeo/vec.hpp"

namespace slicegeo {

/// SplitMix64. Used everywhere instead of <random> engines so that streams are
/// bit-identical across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec gaussian_vec(std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = next_gaussian();
        return v;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Per-item substream seed: sampling determinism must not depend on scheduling,
/// so every parallel work item derives its own stream from (seed, counter).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    Rng mix(seed ^ (0x632be59bd9b4e019ULL + counter * 0x9e3779b97f4a7c15ULL));
    return mix.next_u64();
}

}  // namespace slicegeo
