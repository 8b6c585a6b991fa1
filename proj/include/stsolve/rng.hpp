#ifndef STSOLVE_RNG_HPP
#define STSOLVE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace stsolve {

/// Identifies one random stream. Every draw in the library is a pure
/// function of (master_seed, trial_index, iteration_index) plus the
/// stream role, so runs replay identically on any platform and under
/// any thread schedule.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    std::uint64_t iteration_index = 0;
};

/// Separates draws made from the same SeedSpec: the straggle count and
/// the row subset each get their own stream.
enum class StreamRole : std::uint64_t {
    straggle_count = 1,
    row_subset = 2,
    start_vector = 3,
    initial_guess = 4,
};

/// SplitMix64 generator (the java.util.SplittableRandom mixer). The
/// whole sequence is a pure function of the 64-bit start state, which
/// is derived by hashing the SeedSpec fields together with the role.
/// This is the one PRNG family used anywhere in the library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static SplitMix64 from(const SeedSpec& spec, StreamRole role) {
        std::uint64_t s = mix(spec.master_seed + 0x9E3779B97F4A7C15ull);
        s = mix(s ^ (spec.trial_index + 0xBF58476D1CE4E5B9ull));
        s = mix(s ^ (spec.iteration_index + 0x94D049BB133111EBull));
        s = mix(s ^ (static_cast<std::uint64_t>(role) * 0x9E3779B97F4A7C15ull));
        return SplitMix64(s);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound >= 1; rejection sampling,
    /// no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller. Hand-rolled so sequences do not
    /// depend on the C++ runtime's distribution internals.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace stsolve

#endif // STSOLVE_RNG_HPP
