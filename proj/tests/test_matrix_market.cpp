#include "doctest.h"

#include "stsolve/matrix_market.hpp"
#include "test_helpers.hpp"

#include <sstream>

using namespace stsolve;

namespace {

SparseMatrix load_from(const std::string& text) {
    std::istringstream in(text);
    return load_matrix_market(in);
}

} // namespace

TEST_CASE("loads the smallest legal file") {
    const SparseMatrix a = load_from(
        "%%MatrixMarket matrix coordinate real general\n"
        "1 1 1\n"
        "1 1 2.0\n");
    CHECK(a.n == 1);
    CHECK(a.nnz() == 1);
    CHECK(a.values[0] == 2.0);
}

TEST_CASE("skips comments and accepts mixed-case banner") {
    const SparseMatrix a = load_from(
        "%%matrixmarket matrix COORDINATE Real General\n"
        "% a comment\n"
        "\n"
        "2 2 2\n"
        "1 1 1.5\n"
        "2 2 -2.5\n");
    CHECK(a.n == 2);
    CHECK(a.values == std::vector<double>{1.5, -2.5});
}

TEST_CASE("symmetric files expand to full storage") {
    const SparseMatrix a = load_from(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "3 3 3\n"
        "1 1 2.0\n"
        "2 1 3.0\n"
        "3 3 4.0\n");
    a.check_invariants();
    CHECK(a.nnz() == 4);  // off-diagonal mirrored, diagonal not duplicated
    CHECK(a.row_offsets == std::vector<index_t>{0, 2, 3, 4});
    CHECK(a.col_indices == std::vector<index_t>{0, 1, 0, 2});
    CHECK(a.values == std::vector<double>{2.0, 3.0, 3.0, 4.0});
}

TEST_CASE("duplicate entries are summed") {
    const SparseMatrix a = load_from(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 3\n"
        "1 2 1.0\n"
        "1 2 2.5\n"
        "2 2 1.0\n");
    CHECK(a.nnz() == 2);
    CHECK(a.values == std::vector<double>{3.5, 1.0});
}

TEST_CASE("distinct parse errors") {
    auto kind_of = [](const std::string& text) {
        try {
            load_from(text);
        } catch (const MatrixMarketError& e) {
            return e.kind();
        }
        return MmError::io;  // not reached on the error inputs below
    };

    CHECK(kind_of("%%NotMatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n") ==
          MmError::bad_header);
    CHECK(kind_of("%%MatrixMarket matrix coordinate real general\nbogus size\n") ==
          MmError::bad_header);
    CHECK(kind_of("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n") ==
          MmError::not_square);
    CHECK(kind_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n") ==
          MmError::index_out_of_range);
    CHECK(kind_of("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") ==
          MmError::unsupported_format);
    CHECK(kind_of("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 1\n1 1 1\n") ==
          MmError::unsupported_format);
    CHECK(kind_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n") ==
          MmError::bad_entry);
}

TEST_CASE("write then load reproduces storage bit-exactly") {
    for (int rep = 0; rep < 10; ++rep) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{11u, static_cast<std::uint64_t>(rep), 0}, StreamRole::start_vector);
        const index_t n = 1 + static_cast<index_t>(stream.next_below(20));
        const SparseMatrix a = testing::random_sparse(n, 0.4, stream);

        std::ostringstream out;
        write_matrix_market(a, out);
        std::istringstream in(out.str());
        const SparseMatrix b = load_matrix_market(in);

        CHECK(b.n == a.n);
        CHECK(b.row_offsets == a.row_offsets);
        CHECK(b.col_indices == a.col_indices);
        CHECK(b.values == a.values);  // element-wise operator== is bitwise for finite doubles
    }
}

TEST_CASE("writer always emits the general banner") {
    std::ostringstream out;
    write_matrix_market(SparseMatrix::identity(2), out);
    CHECK(out.str().rfind("%%MatrixMarket matrix coordinate real general\n", 0) == 0);
}

TEST_CASE("dense vector roundtrip") {
    const DenseVector v{1.0, -0.125, 3.5e-15, 7.0};
    std::ostringstream out;
    write_dense_vector(v, out);
    std::istringstream in(out.str());
    CHECK(load_dense_vector(in) == v);
}
