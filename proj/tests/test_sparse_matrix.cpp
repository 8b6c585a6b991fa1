#include "doctest.h"

#include "stsolve/sparse_matrix.hpp"
#include "test_helpers.hpp"

#include <stdexcept>

using namespace stsolve;

TEST_CASE("from_triplets sorts rows and sums duplicates") {
    std::vector<SparseMatrix::Triplet> t{
        {1, 1, 4.0}, {0, 1, 2.0}, {0, 0, 1.0}, {0, 1, 3.0},
    };
    const SparseMatrix a = SparseMatrix::from_triplets(2, std::move(t));
    a.check_invariants();
    CHECK(a.nnz() == 3);
    CHECK(a.row_offsets == std::vector<index_t>{0, 2, 3});
    CHECK(a.col_indices == std::vector<index_t>{0, 1, 1});
    CHECK(a.values == std::vector<double>{1.0, 5.0, 4.0});
}

TEST_CASE("from_triplets rejects out-of-range indices") {
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, {{0, 2, 1.0}}), std::out_of_range);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, {{-1, 0, 1.0}}), std::out_of_range);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(0, {}), std::invalid_argument);
}

TEST_CASE("matvec identity and diagonal") {
    const DenseVector f{1.0, 2.0, 3.0};
    CHECK(matvec(SparseMatrix::identity(3), f) == DenseVector{1.0, 2.0, 3.0});
    CHECK(matvec(SparseMatrix::diagonal({2.0, 2.0}), {1.0, 1.0}) == DenseVector{2.0, 2.0});
}

TEST_CASE("matvec rejects dimension mismatch") {
    CHECK_THROWS_AS(matvec(SparseMatrix::identity(3), DenseVector{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("matvec agrees with a dense brute-force product") {
    for (int rep = 0; rep < 20; ++rep) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{7u, static_cast<std::uint64_t>(rep), 0}, StreamRole::start_vector);
        const index_t n = 1 + static_cast<index_t>(stream.next_below(64));
        const SparseMatrix a = testing::random_sparse(n, 0.3, stream);
        const DenseVector f = testing::random_vector(n, stream);

        const auto grid = testing::dense_grid(a);
        const DenseVector expected = testing::brute_matvec(grid, f);
        const DenseVector got = matvec(a, f);

        double a_inf = 0.0;
        for (const auto& row : grid) {
            double s = 0.0;
            for (double v : row) s += std::abs(v);
            a_inf = std::max(a_inf, s);
        }
        double f_inf = 0.0;
        for (double v : f) f_inf = std::max(f_inf, std::abs(v));

        CHECK(testing::max_abs_diff(expected, got) <= 1e-13 * a_inf * f_inf);
    }
}
