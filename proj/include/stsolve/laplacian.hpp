#ifndef STSOLVE_LAPLACIAN_HPP
#define STSOLVE_LAPLACIAN_HPP

#include "stsolve/sparse_matrix.hpp"

namespace stsolve {

/// 7-point finite-difference Laplacian on an n x n x n interior grid of
/// the unit cube with Dirichlet boundaries: diagonal 6, -1 per grid
/// neighbor, unscaled integer stencil. Result is SPD with
/// N = n_per_dim^3 rows.
SparseMatrix gen_laplacian_3d(index_t n_per_dim);

} // namespace stsolve

#endif // STSOLVE_LAPLACIAN_HPP
