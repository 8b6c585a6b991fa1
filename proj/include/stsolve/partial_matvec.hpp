#ifndef STSOLVE_PARTIAL_MATVEC_HPP
#define STSOLVE_PARTIAL_MATVEC_HPP

#include "stsolve/sparse_matrix.hpp"
#include "stsolve/straggle.hpp"

namespace stsolve {

/// Masked product: entry i equals row i of A dotted with f when i is in
/// the mask and exactly 0.0 otherwise. Only masked rows are touched;
/// the selection matrix is never materialized.
DenseVector partial_matvec(const SparseMatrix& a, const DenseVector& f, const RowMask& mask);

/// z - omega_hat * partial_matvec(a, z, mask), computed in one pass.
DenseVector apply_iteration_matrix(const SparseMatrix& a, const DenseVector& z,
                                   const RowMask& mask, double omega_hat);

} // namespace stsolve

#endif // STSOLVE_PARTIAL_MATVEC_HPP
