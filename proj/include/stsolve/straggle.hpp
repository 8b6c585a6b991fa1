#ifndef STSOLVE_STRAGGLE_HPP
#define STSOLVE_STRAGGLE_HPP

#include "stsolve/rng.hpp"
#include "stsolve/types.hpp"

#include <string>

namespace stsolve {

enum class DistKind {
    uniform_interval,  // T uniform over the integers within +-half_width of the mean
    fixed,             // T constant
    full,              // T == N, the classical limit
};

std::string to_string(DistKind kind);

/// Distribution of the number T of rows returned per product. Draws are
/// clamped into [1, N]; expected_t() reports the mean of the clamped
/// law, which is what the corrected step size has to use.
struct StraggleDistribution {
    DistKind kind = DistKind::full;
    double expected_value = 0.0;  // requested E[T] before clamping
    index_t half_width = 0;
    index_t n = 0;

    static StraggleDistribution uniform_interval(double expected_t, index_t half_width,
                                                 index_t n);
    static StraggleDistribution fixed(double t, index_t n);
    static StraggleDistribution full(index_t n);
};

/// Sorted set of sampled row indices.
struct RowMask {
    std::vector<index_t> indices;  // strictly increasing, in [0, n)

    index_t t() const { return static_cast<index_t>(indices.size()); }
};

index_t sample_t(const StraggleDistribution& dist, SplitMix64& stream);
index_t sample_t(const StraggleDistribution& dist, const SeedSpec& seed);

/// Uniform t-subset of {0,...,n-1} in O(t) expected time (Floyd
/// selection; complements when t > n/2).
RowMask sample_mask(index_t t, index_t n, SplitMix64& stream);
RowMask sample_mask(index_t t, index_t n, const SeedSpec& seed);

/// Exact analytic mean of the clamped distribution, by direct summation
/// over the support for the interval kind.
double expected_t(const StraggleDistribution& dist);

} // namespace stsolve

#endif // STSOLVE_STRAGGLE_HPP
