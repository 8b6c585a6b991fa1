#include "stsolve/straggle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace stsolve {

std::string to_string(DistKind kind) {
    switch (kind) {
        case DistKind::uniform_interval: return "uniform_interval";
        case DistKind::fixed: return "fixed";
        case DistKind::full: return "full";
    }
    return "unknown";
}

namespace {

void validate_mean(double expected_t, index_t n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(expected_t >= 1.0) || !(expected_t <= static_cast<double>(n)))
        throw std::invalid_argument("expected T must lie in [1, N]");
}

// integer support of the interval law; degenerates to round(mean) when
// the interval contains no integer
struct Support {
    index_t lo;
    index_t hi;
};

Support interval_support(const StraggleDistribution& d) {
    index_t lo = static_cast<index_t>(std::ceil(d.expected_value - static_cast<double>(d.half_width)));
    index_t hi = static_cast<index_t>(std::floor(d.expected_value + static_cast<double>(d.half_width)));
    if (lo > hi) lo = hi = static_cast<index_t>(std::llround(d.expected_value));
    return {lo, hi};
}

index_t clamp_t(index_t t, index_t n) { return std::clamp<index_t>(t, 1, n); }

// Floyd's subset selection: uniform k-subset of {0,...,n-1}, unsorted.
// Linear membership scan for small k, hash set otherwise.
std::vector<index_t> floyd_sample(index_t k, index_t n, SplitMix64& stream) {
    std::vector<index_t> picked;
    picked.reserve(static_cast<std::size_t>(k));
    if (k <= 64) {
        for (index_t j = n - k; j < n; ++j) {
            const index_t r =
                static_cast<index_t>(stream.next_below(static_cast<std::uint64_t>(j) + 1));
            const bool seen = std::find(picked.begin(), picked.end(), r) != picked.end();
            picked.push_back(seen ? j : r);
        }
    } else {
        std::unordered_set<index_t> seen;
        seen.reserve(static_cast<std::size_t>(2 * k));
        for (index_t j = n - k; j < n; ++j) {
            const index_t r =
                static_cast<index_t>(stream.next_below(static_cast<std::uint64_t>(j) + 1));
            const index_t take = seen.insert(r).second ? r : j;
            if (take == j) seen.insert(j);
            picked.push_back(take);
        }
    }
    return picked;
}

} // namespace

StraggleDistribution StraggleDistribution::uniform_interval(double expected_t,
                                                            index_t half_width, index_t n) {
    validate_mean(expected_t, n);
    if (half_width < 0) throw std::invalid_argument("half_width must be >= 0");
    return StraggleDistribution{DistKind::uniform_interval, expected_t, half_width, n};
}

StraggleDistribution StraggleDistribution::fixed(double t, index_t n) {
    validate_mean(t, n);
    return StraggleDistribution{DistKind::fixed, t, 0, n};
}

StraggleDistribution StraggleDistribution::full(index_t n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return StraggleDistribution{DistKind::full, static_cast<double>(n), 0, n};
}

index_t sample_t(const StraggleDistribution& dist, SplitMix64& stream) {
    switch (dist.kind) {
        case DistKind::full:
            return dist.n;
        case DistKind::fixed:
            return clamp_t(static_cast<index_t>(std::llround(dist.expected_value)), dist.n);
        case DistKind::uniform_interval: {
            const Support s = interval_support(dist);
            const index_t draw =
                s.lo + static_cast<index_t>(
                           stream.next_below(static_cast<std::uint64_t>(s.hi - s.lo) + 1));
            return clamp_t(draw, dist.n);
        }
    }
    throw std::logic_error("unreachable");
}

index_t sample_t(const StraggleDistribution& dist, const SeedSpec& seed) {
    SplitMix64 stream = SplitMix64::from(seed, StreamRole::straggle_count);
    return sample_t(dist, stream);
}

RowMask sample_mask(index_t t, index_t n, SplitMix64& stream) {
    if (t < 1 || t > n) throw std::out_of_range("mask cardinality outside [1, n]");
    RowMask mask;
    if (t == n) {
        mask.indices.resize(static_cast<std::size_t>(n));
        std::iota(mask.indices.begin(), mask.indices.end(), index_t{0});
        return mask;
    }
    if (2 * t <= n) {
        mask.indices = floyd_sample(t, n, stream);
        std::sort(mask.indices.begin(), mask.indices.end());
    } else {
        // complement of a uniform (n-t)-subset is a uniform t-subset
        std::vector<index_t> excluded = floyd_sample(n - t, n, stream);
        std::sort(excluded.begin(), excluded.end());
        mask.indices.reserve(static_cast<std::size_t>(t));
        std::size_t e = 0;
        for (index_t i = 0; i < n; ++i) {
            if (e < excluded.size() && excluded[e] == i) {
                ++e;
                continue;
            }
            mask.indices.push_back(i);
        }
    }
#ifndef NDEBUG
    assert(mask.t() == t);
    for (std::size_t i = 1; i < mask.indices.size(); ++i)
        assert(mask.indices[i - 1] < mask.indices[i]);
#endif
    return mask;
}

RowMask sample_mask(index_t t, index_t n, const SeedSpec& seed) {
    SplitMix64 stream = SplitMix64::from(seed, StreamRole::row_subset);
    return sample_mask(t, n, stream);
}

double expected_t(const StraggleDistribution& dist) {
    switch (dist.kind) {
        case DistKind::full:
            return static_cast<double>(dist.n);
        case DistKind::fixed:
            return static_cast<double>(
                clamp_t(static_cast<index_t>(std::llround(dist.expected_value)), dist.n));
        case DistKind::uniform_interval: {
            const Support s = interval_support(dist);
            long double acc = 0.0L;
            for (index_t k = s.lo; k <= s.hi; ++k)
                acc += static_cast<long double>(clamp_t(k, dist.n));
            return static_cast<double>(acc / static_cast<long double>(s.hi - s.lo + 1));
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace stsolve
