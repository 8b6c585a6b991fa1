#ifndef STSOLVE_TEST_HELPERS_HPP
#define STSOLVE_TEST_HELPERS_HPP

#include "stsolve/rng.hpp"
#include "stsolve/sparse_matrix.hpp"

#include <cmath>
#include <vector>

namespace stsolve::testing {

/// Tridiagonal [-1, 2, -1] operator on n points.
inline SparseMatrix lap1d(index_t n) {
    std::vector<SparseMatrix::Triplet> t;
    for (index_t i = 0; i < n; ++i) {
        if (i > 0) t.push_back({i, i - 1, -1.0});
        t.push_back({i, i, 2.0});
        if (i < n - 1) t.push_back({i, i + 1, -1.0});
    }
    return SparseMatrix::from_triplets(n, std::move(t));
}

/// Plain dense mirror, independent of every library kernel.
inline std::vector<std::vector<double>> dense_grid(const SparseMatrix& a) {
    std::vector<std::vector<double>> grid(
        static_cast<std::size_t>(a.n),
        std::vector<double>(static_cast<std::size_t>(a.n), 0.0));
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            grid[static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])] +=
                a.values[static_cast<std::size_t>(k)];
    return grid;
}

/// Brute-force product over the dense mirror.
inline DenseVector brute_matvec(const std::vector<std::vector<double>>& grid,
                                const DenseVector& f) {
    DenseVector y(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid[i].size(); ++j) y[i] += grid[i][j] * f[j];
    return y;
}

inline SparseMatrix random_sparse(index_t n, double density, SplitMix64& stream,
                                  bool symmetric = false) {
    std::vector<SparseMatrix::Triplet> t;
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = symmetric ? i : 0; j < n; ++j) {
            if (stream.next_double() > density) continue;
            const int exponent = static_cast<int>(stream.next_below(41)) - 20;
            const double v =
                (2.0 * stream.next_double() - 1.0) * std::ldexp(1.0, exponent);
            t.push_back({i, j, v});
            if (symmetric && i != j) t.push_back({j, i, v});
        }
    }
    if (t.empty()) t.push_back({0, 0, 1.0});
    return SparseMatrix::from_triplets(n, std::move(t));
}

inline DenseVector random_vector(index_t n, SplitMix64& stream) {
    DenseVector v(static_cast<std::size_t>(n));
    for (double& x : v) x = 2.0 * stream.next_double() - 1.0;
    return v;
}

inline double max_abs_diff(const DenseVector& a, const DenseVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline bool bitwise_equal(const DenseVector& a, const DenseVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace stsolve::testing

#endif // STSOLVE_TEST_HELPERS_HPP
