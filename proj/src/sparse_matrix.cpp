#include "stsolve/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace stsolve {

SparseMatrix SparseMatrix::from_triplets(index_t n, std::vector<Triplet> entries) {
    if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
    for (const Triplet& e : entries) {
        if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n)
            throw std::out_of_range("triplet index outside matrix");
    }
    // stable sort keeps duplicate summation order equal to input order
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Triplet& a, const Triplet& b) {
                         return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });

    SparseMatrix m;
    m.n = n;
    m.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    m.col_indices.reserve(entries.size());
    m.values.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < entries.size() && entries[j].row == entries[i].row &&
               entries[j].col == entries[i].col) {
            sum += entries[j].value;
            ++j;
        }
        m.col_indices.push_back(entries[i].col);
        m.values.push_back(sum);
        m.row_offsets[static_cast<std::size_t>(entries[i].row) + 1]++;
        i = j;
    }
    for (index_t r = 0; r < n; ++r)
        m.row_offsets[static_cast<std::size_t>(r) + 1] +=
            m.row_offsets[static_cast<std::size_t>(r)];
    return m;
}

SparseMatrix SparseMatrix::identity(index_t n) {
    return diagonal(DenseVector(static_cast<std::size_t>(n), 1.0));
}

SparseMatrix SparseMatrix::diagonal(const DenseVector& diag) {
    const index_t n = static_cast<index_t>(diag.size());
    if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
    SparseMatrix m;
    m.n = n;
    m.row_offsets.resize(static_cast<std::size_t>(n) + 1);
    m.col_indices.resize(static_cast<std::size_t>(n));
    m.values = diag;
    for (index_t i = 0; i <= n; ++i) m.row_offsets[static_cast<std::size_t>(i)] = i;
    for (index_t i = 0; i < n; ++i) m.col_indices[static_cast<std::size_t>(i)] = i;
    return m;
}

void SparseMatrix::check_invariants() const {
    if (n <= 0) throw std::logic_error("non-positive dimension");
    if (row_offsets.size() != static_cast<std::size_t>(n) + 1)
        throw std::logic_error("row_offsets length mismatch");
    if (row_offsets.front() != 0) throw std::logic_error("row_offsets[0] != 0");
    if (row_offsets.back() != nnz()) throw std::logic_error("row_offsets[n] != nnz");
    if (col_indices.size() != values.size())
        throw std::logic_error("col_indices/values length mismatch");
    for (index_t r = 0; r < n; ++r) {
        const index_t lo = row_offsets[static_cast<std::size_t>(r)];
        const index_t hi = row_offsets[static_cast<std::size_t>(r) + 1];
        if (lo > hi) throw std::logic_error("row_offsets not monotone");
        for (index_t k = lo; k < hi; ++k) {
            const index_t c = col_indices[static_cast<std::size_t>(k)];
            if (c < 0 || c >= n) throw std::logic_error("column index out of range");
            if (k > lo && col_indices[static_cast<std::size_t>(k) - 1] >= c)
                throw std::logic_error("columns not strictly increasing in row");
        }
    }
}

DenseVector matvec(const SparseMatrix& a, const DenseVector& x) {
    if (static_cast<index_t>(x.size()) != a.n)
        throw std::invalid_argument("matvec dimension mismatch");
    DenseVector y(static_cast<std::size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) y[static_cast<std::size_t>(i)] = a.row_dot(i, x);
    return y;
}

} // namespace stsolve
