#include "stsolve/partial_matvec.hpp"

#include <stdexcept>

namespace stsolve {

namespace {

void validate(const SparseMatrix& a, const DenseVector& f, const RowMask& mask) {
    if (static_cast<index_t>(f.size()) != a.n)
        throw std::invalid_argument("vector length does not match matrix dimension");
    if (!mask.indices.empty() &&
        (mask.indices.front() < 0 || mask.indices.back() >= a.n))
        throw std::out_of_range("mask index outside matrix dimension");
}

} // namespace

DenseVector partial_matvec(const SparseMatrix& a, const DenseVector& f, const RowMask& mask) {
    validate(a, f, mask);
    DenseVector y(static_cast<std::size_t>(a.n), 0.0);
    for (index_t i : mask.indices) y[static_cast<std::size_t>(i)] = a.row_dot(i, f);
    return y;
}

DenseVector apply_iteration_matrix(const SparseMatrix& a, const DenseVector& z,
                                   const RowMask& mask, double omega_hat) {
    validate(a, z, mask);
    DenseVector y = z;
    for (index_t i : mask.indices)
        y[static_cast<std::size_t>(i)] =
            z[static_cast<std::size_t>(i)] - omega_hat * a.row_dot(i, z);
    return y;
}

} // namespace stsolve
