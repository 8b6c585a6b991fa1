#include "stsolve/laplacian.hpp"

#include <stdexcept>

namespace stsolve {

SparseMatrix gen_laplacian_3d(index_t n_per_dim) {
    if (n_per_dim < 1) throw std::invalid_argument("n_per_dim must be >= 1");
    if (n_per_dim > 2097151)  // n^3 would overflow 63 bits
        throw std::overflow_error("grid dimension overflow");
    const index_t n = n_per_dim;
    const index_t n2 = n * n;
    const index_t total = n2 * n;

    SparseMatrix m;
    m.n = total;
    m.row_offsets.reserve(static_cast<std::size_t>(total) + 1);
    m.col_indices.reserve(static_cast<std::size_t>(7 * total));
    m.values.reserve(static_cast<std::size_t>(7 * total));
    m.row_offsets.push_back(0);

    auto push = [&m](index_t col, double value) {
        m.col_indices.push_back(col);
        m.values.push_back(value);
    };

    for (index_t k = 0; k < n; ++k) {
        for (index_t j = 0; j < n; ++j) {
            for (index_t i = 0; i < n; ++i) {
                const index_t idx = (k * n + j) * n + i;
                if (k > 0) push(idx - n2, -1.0);
                if (j > 0) push(idx - n, -1.0);
                if (i > 0) push(idx - 1, -1.0);
                push(idx, 6.0);
                if (i < n - 1) push(idx + 1, -1.0);
                if (j < n - 1) push(idx + n, -1.0);
                if (k < n - 1) push(idx + n2, -1.0);
                m.row_offsets.push_back(static_cast<index_t>(m.col_indices.size()));
            }
        }
    }
    return m;
}

} // namespace stsolve
