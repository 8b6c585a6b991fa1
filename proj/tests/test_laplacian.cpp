#include "doctest.h"

#include "stsolve/laplacian.hpp"
#include "test_helpers.hpp"

#include <stdexcept>

using namespace stsolve;

namespace {

bool is_boundary(index_t idx, index_t n) {
    const index_t i = idx % n, j = (idx / n) % n, k = idx / (n * n);
    return i == 0 || i == n - 1 || j == 0 || j == n - 1 || k == 0 || k == n - 1;
}

} // namespace

TEST_CASE("single grid point has no neighbors") {
    const SparseMatrix a = gen_laplacian_3d(1);
    CHECK(a.n == 1);
    CHECK(a.nnz() == 1);
    CHECK(a.values[0] == 6.0);
}

TEST_CASE("2x2x2 grid: every node has exactly three neighbors") {
    const SparseMatrix a = gen_laplacian_3d(2);
    a.check_invariants();
    CHECK(a.n == 8);
    for (index_t i = 0; i < a.n; ++i) {
        const index_t lo = a.row_offsets[static_cast<std::size_t>(i)];
        const index_t hi = a.row_offsets[static_cast<std::size_t>(i) + 1];
        CHECK(hi - lo == 4);  // diagonal plus three off-diagonals
        int minus_ones = 0;
        for (index_t k = lo; k < hi; ++k) {
            const double v = a.values[static_cast<std::size_t>(k)];
            if (a.col_indices[static_cast<std::size_t>(k)] == i)
                CHECK(v == 6.0);
            else {
                CHECK(v == -1.0);
                ++minus_ones;
            }
        }
        CHECK(minus_ones == 3);
    }
}

TEST_CASE("10x10x10 grid shape") {
    const SparseMatrix a = gen_laplacian_3d(10);
    a.check_invariants();
    CHECK(a.n == 1000);
    for (index_t i = 0; i < a.n; ++i) {
        const index_t row_len = a.row_offsets[static_cast<std::size_t>(i) + 1] -
                                a.row_offsets[static_cast<std::size_t>(i)];
        CHECK(row_len <= 7);
        // the diagonal entry is always present and equals 6
        bool found = false;
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            if (a.col_indices[static_cast<std::size_t>(k)] == i) {
                found = true;
                CHECK(a.values[static_cast<std::size_t>(k)] == 6.0);
            }
        CHECK(found);
    }
}

TEST_CASE("stencil matrix is structurally symmetric") {
    const SparseMatrix a = gen_laplacian_3d(5);
    const auto grid = testing::dense_grid(a);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            CHECK(grid[i][j] == grid[j][i]);
}

TEST_CASE("diagonally dominant, strictly at boundary rows") {
    const index_t n = 4;
    const SparseMatrix a = gen_laplacian_3d(n);
    for (index_t i = 0; i < a.n; ++i) {
        double offdiag = 0.0;
        double diag = 0.0;
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const double v = a.values[static_cast<std::size_t>(k)];
            if (a.col_indices[static_cast<std::size_t>(k)] == i)
                diag = v;
            else
                offdiag += std::abs(v);
        }
        CHECK(diag >= offdiag);
        if (is_boundary(i, n)) CHECK(diag > offdiag);
    }
}

TEST_CASE("2x2x2 product with all-ones matches the dense mirror") {
    const SparseMatrix a = gen_laplacian_3d(2);
    const DenseVector ones(8, 1.0);
    CHECK(matvec(a, ones) == testing::brute_matvec(testing::dense_grid(a), ones));
}

TEST_CASE("invalid grid sizes are rejected") {
    CHECK_THROWS_AS(gen_laplacian_3d(0), std::invalid_argument);
    CHECK_THROWS_AS(gen_laplacian_3d(3'000'000), std::overflow_error);
}
