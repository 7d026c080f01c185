#ifndef GLOSS_RNG_HPP_
#define GLOSS_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace gloss {

/**
 * Small counter-style random generator with reproducible, platform-stable
 * streams (SplitMix64 core, Steele et al.). All randomness in the library
 * flows from one user seed via labelled substreams so that independent
 * stages (centers, assignment, noise, implants, Monte-Carlo iterations)
 * never share state.
 *
 * Integer and uniform draws are bit-stable across platforms; normal draws
 * additionally depend on libm's log().
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed), spare_valid_(false) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform real in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling on the top bits
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Standard normal via the Marsaglia polar method (log/sqrt only).
    double normal() {
        if (spare_valid_) {
            spare_valid_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        spare_valid_ = true;
        return u * m;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool spare_valid_;
};

/// Mixes a label into a seed; chaining labels derives independent substreams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (label + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives the seed of the substream identified by a label path.
inline std::uint64_t substream(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
    std::uint64_t s = seed;
    for (std::uint64_t l : labels) s = mix_seed(s, l);
    return s;
}

} // namespace gloss

#endif // GLOSS_RNG_HPP_
