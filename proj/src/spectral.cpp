#include "stsolve/spectral.hpp"

#include "stsolve/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stsolve {

namespace {

// up to ~200 rows, mirror every stored entry of each sampled row
void spot_check_symmetry(const SparseMatrix& a) {
    const index_t stride = std::max<index_t>(1, a.n / 200);
    for (index_t i = 0; i < a.n; i += stride) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            const double v = a.values[static_cast<std::size_t>(k)];
            const auto begin = a.col_indices.begin() + a.row_offsets[static_cast<std::size_t>(j)];
            const auto end = a.col_indices.begin() + a.row_offsets[static_cast<std::size_t>(j) + 1];
            const auto it = std::lower_bound(begin, end, i);
            const double mirror =
                (it != end && *it == i)
                    ? a.values[static_cast<std::size_t>(it - a.col_indices.begin())]
                    : 0.0;
            if (std::abs(v - mirror) > 1e-12 * std::max({1.0, std::abs(v), std::abs(mirror)}))
                throw std::invalid_argument("symmetry spot check failed at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

double norm2(const DenseVector& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

// Rayleigh-quotient power iteration on a generic SPD operator.
// Converges when the estimate's relative change drops below tol.
template <typename Apply>
double power_iterate(index_t n, Apply&& apply, double tol, index_t max_iter,
                     SplitMix64& stream, const char* what) {
    DenseVector x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (double& v : x) v = 2.0 * stream.next_double() - 1.0;
    double nx = norm2(x);
    if (nx == 0.0) {
        x[0] = 1.0;
        nx = 1.0;
    }
    for (double& v : x) v /= nx;

    double lambda = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (index_t iter = 0; iter < max_iter; ++iter) {
        apply(x, y);
        lambda = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) lambda += x[i] * y[i];
        const double ny = norm2(y);
        if (ny == 0.0) return 0.0;  // operator annihilates the iterate
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] / ny;
        if (std::abs(lambda - prev) <= tol * std::abs(lambda)) return lambda;
        prev = lambda;
    }
    throw ConvergenceError(std::string(what) + " power iteration did not converge in " +
                               std::to_string(max_iter) + " iterations, last estimate " +
                               std::to_string(lambda),
                           lambda);
}

} // namespace

SpectralBounds estimate_bounds(const SparseMatrix& a, double tol, index_t max_iter,
                               std::uint64_t seed) {
    if (a.n < 1) throw std::invalid_argument("empty matrix");
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    spot_check_symmetry(a);

    SeedSpec spec{seed, 0, 0};
    SplitMix64 stream = SplitMix64::from(spec, StreamRole::start_vector);

    const double lambda_max = power_iterate(
        a.n,
        [&a](const DenseVector& x, DenseVector& y) {
            for (index_t i = 0; i < a.n; ++i)
                y[static_cast<std::size_t>(i)] = a.row_dot(i, x);
        },
        tol, max_iter, stream, "lambda_max");
    if (!(lambda_max > 0.0))
        throw std::invalid_argument("largest eigenvalue estimate not positive; matrix not SPD?");

    const double sigma = lambda_max * (1.0 + tol);
    const double shifted = power_iterate(
        a.n,
        [&a, sigma](const DenseVector& x, DenseVector& y) {
            for (index_t i = 0; i < a.n; ++i)
                y[static_cast<std::size_t>(i)] =
                    sigma * x[static_cast<std::size_t>(i)] - a.row_dot(i, x);
        },
        tol, max_iter, stream, "lambda_min");

    SpectralBounds bounds;
    bounds.lambda_max = lambda_max;
    bounds.lambda_min = std::min(sigma - shifted, lambda_max);
    return bounds;
}

} // namespace stsolve
