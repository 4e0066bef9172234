#pragma once

#include <cmath>
#include <cstdint>

namespace bgcsp {

// splitmix64 (Steele/Lea/Flood; Vigna's fixed-increment form).
// One 64-bit word of state, full-period, passes BigCrush. Gaussian deviates
// come from the Marsaglia polar transform with the spare cached, so every
// stream is a pure function of its seed and the sequence of draw calls.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on [0,1) with 53-bit resolution
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal deviate
    double next_gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // +1 or -1 with equal probability
    double next_sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

    bool next_bernoulli(double p) noexcept { return next_unit() < p; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Seed-splitting rule for path ensembles: path i draws from a splitmix64
// stream seeded with master_seed XOR i. Distinct indices give distinct
// state trajectories (states advance by an odd constant, so two streams
// coincide only if their seeds differ by a multiple of it), and results do
// not depend on which worker simulates which path.
inline SplitMix64 path_noise_stream(std::uint64_t master_seed,
                                    std::uint64_t path_index) noexcept {
    return SplitMix64(master_seed ^ path_index);
}

// Side-resolution coins (skew barriers, ladder bands) come from a second
// stream offset by a fixed constant. Keeping coins out of the noise stream
// lets configurations with different barrier counts share identical Wiener
// increments for the same master seed, which is what makes paired-path
// comparisons across ladder refinements meaningful.
inline SplitMix64 path_coin_stream(std::uint64_t master_seed,
                                   std::uint64_t path_index) noexcept {
    return SplitMix64((master_seed ^ path_index) + 0x6a09e667f3bcc909ULL);
}

}  // namespace bgcsp
