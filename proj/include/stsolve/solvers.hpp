#ifndef STSOLVE_SOLVERS_HPP
#define STSOLVE_SOLVERS_HPP

#include "stsolve/sparse_matrix.hpp"
#include "stsolve/spectral.hpp"
#include "stsolve/straggle.hpp"

namespace stsolve {

/// First-order stationary iteration z' = z + omega*(v - A z). The
/// straggler-tolerant variant applies a freshly sampled row mask to the
/// matrix product each iteration and weights it by omega_hat.
struct RichardsonParams {
    double omega = 0.0;
    double omega_hat = 0.0;  // ignored by the classical solver
    index_t m = 0;
    DenseVector z0;
};

/// Second-order stationary iteration with fixed scalars
/// z' = z + eta*(z - z_prev) + nu*v - nu_hat*(D A z). The classical
/// variant uses nu_hat == nu and a full mask.
struct ChebyshevParams {
    double eta = 0.0;
    double nu = 0.0;
    double nu_hat = 0.0;  // ignored by the classical solver
    index_t m = 0;
    DenseVector z0;
    DenseVector z_minus1;  // empty means z_minus1 = z0
};

/// Final iterate plus deep-copied snapshots at the requested iteration
/// indices (0 = initial guess), in ascending order.
struct IterateTrace {
    std::vector<std::pair<index_t, DenseVector>> snapshots;
    DenseVector final_iterate;
};

/// Optimal first-order step size for an SPD spectrum enclosure:
/// 2 / (lambda_min + lambda_max).
double omega_cr(const SpectralBounds& bounds);

struct ChebyshevCoeffs {
    double eta = 0.0;
    double nu = 0.0;
};

/// Fixed second-order scalars for eigenvalues enclosed by [alpha, beta]:
/// with c = (alpha+beta)/(beta-alpha), rho = c - sqrt(c^2 - 1) and
/// delta = (alpha+beta)/2, returns eta = rho^2, nu = 2*rho/delta.
ChebyshevCoeffs chebyshev_coeffs(double alpha, double beta);

IterateTrace richardson_classical(const SparseMatrix& a, const DenseVector& v,
                                  const RichardsonParams& params,
                                  const std::vector<index_t>& snapshot_at = {});

/// Samples (T_i, mask_i) per iteration from streams keyed by
/// (seed.master_seed, seed.trial_index, i); seed.iteration_index is
/// overwritten internally. Fully reproducible from the seed.
IterateTrace richardson_straggler(const SparseMatrix& a, const DenseVector& v,
                                  const RichardsonParams& params,
                                  const StraggleDistribution& dist, const SeedSpec& seed,
                                  const std::vector<index_t>& snapshot_at = {});

IterateTrace chebyshev_classical(const SparseMatrix& a, const DenseVector& v,
                                 const ChebyshevParams& params,
                                 const std::vector<index_t>& snapshot_at = {});

IterateTrace chebyshev_straggler(const SparseMatrix& a, const DenseVector& v,
                                 const ChebyshevParams& params,
                                 const StraggleDistribution& dist, const SeedSpec& seed,
                                 const std::vector<index_t>& snapshot_at = {});

} // namespace stsolve

#endif // STSOLVE_SOLVERS_HPP
