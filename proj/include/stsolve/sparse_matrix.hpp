#ifndef STSOLVE_SPARSE_MATRIX_HPP
#define STSOLVE_SPARSE_MATRIX_HPP

#include "stsolve/types.hpp"

namespace stsolve {

/// Square sparse matrix in compressed-row storage. Instances are
/// immutable by convention once built and safe to share across threads.
struct SparseMatrix {
    index_t n = 0;
    std::vector<index_t> row_offsets;  // length n+1, row_offsets[0] == 0
    std::vector<index_t> col_indices;  // strictly increasing within each row
    std::vector<double> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Dot product of row `i` with `x`, accumulated left to right in
    /// storage order. Every matvec variant shares this kernel so masked
    /// and full products agree bitwise on computed rows.
    double row_dot(index_t i, const DenseVector& x) const {
        double acc = 0.0;
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            acc += values[k] * x[col_indices[k]];
        return acc;
    }

    struct Triplet {
        index_t row;
        index_t col;
        double value;
    };

    /// Builds CSR from unordered triplets. Entries are sorted by
    /// (row, col); duplicates are summed in input order.
    static SparseMatrix from_triplets(index_t n, std::vector<Triplet> entries);

    static SparseMatrix identity(index_t n);
    static SparseMatrix diagonal(const DenseVector& diag);

    /// Throws std::logic_error if the CSR invariants are broken.
    void check_invariants() const;
};

/// y = A x, exact full product. Throws on dimension mismatch.
DenseVector matvec(const SparseMatrix& a, const DenseVector& x);

} // namespace stsolve

#endif // STSOLVE_SPARSE_MATRIX_HPP
