#ifndef STSOLVE_ORACLE_HPP
#define STSOLVE_ORACLE_HPP

#include "stsolve/sparse_matrix.hpp"
#include "stsolve/straggle.hpp"

namespace stsolve {
namespace oracle {

/// Enumeration and expectation references are capped at small sizes;
/// they exist to verify the sparse solvers, not to compete with them.
inline constexpr index_t kDimCap = 64;
inline constexpr index_t kEnumerationDimCap = 20;
inline constexpr double kSequenceEnumerationCap = 1e5;

/// Small dense mirror of a matrix, row-major.
struct DenseMatrix {
    index_t n = 0;
    std::vector<double> entries;

    DenseMatrix() = default;
    explicit DenseMatrix(index_t dim);

    double& at(index_t i, index_t j) {
        return entries[static_cast<std::size_t>(i * n + j)];
    }
    double at(index_t i, index_t j) const {
        return entries[static_cast<std::size_t>(i * n + j)];
    }

    static DenseMatrix identity(index_t dim);
    static DenseMatrix from_sparse(const SparseMatrix& a);
};

/// (current, previous) iterate pair of a second-order recurrence.
struct VectorPair {
    DenseVector current;
    DenseVector previous;
};

double binomial(index_t n, index_t k);

/// All C(n, t) row masks in lexicographic order. Requires n <= 20.
std::vector<RowMask> enumerate_masks(index_t n, index_t t);

/// Enumeration average of omega_hat*(I - D)A over every mask of
/// cardinality t. Checks the result against the closed form
/// ((n-t)/n)*omega_hat*A and throws std::logic_error on disagreement.
DenseMatrix expected_perturbation(const DenseMatrix& a, double omega_hat, index_t t);

/// Exact mean iterate of the masked first-order scheme under a fixed
/// (or mean) row count, via the expectation recurrence
/// mu' = (I - (t_mean/n)*omega_hat*A) mu + omega*v. Valid for any real
/// t_mean because the one-step expectation is linear in the row count.
DenseVector exact_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                               double omega_hat, double t_mean, index_t m,
                               const DenseVector& z0);

/// Convenience overload using the clamped mean of a distribution.
DenseVector exact_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                               double omega_hat, const StraggleDistribution& dist, index_t m,
                               const DenseVector& z0);

/// Brute-force mean over all C(n,t)^m mask sequences; the independence
/// cross-check for exact_mean_iterate. Capped at 1e5 sequences.
DenseVector enumerated_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                                    double omega_hat, index_t t, index_t m,
                                    const DenseVector& z0);

/// Closed-form mean for the start iterate z0 = omega*v:
/// omega * M^{-1} (I - (I - M)^{m+1}) v with M = (expected_t/n)*omega_hat*A,
/// evaluated with a dense solve and repeated multiplication.
DenseVector closed_form_mean(const DenseMatrix& a, const DenseVector& v, double omega,
                             double omega_hat, double expected_t, index_t m);

/// Exact mean pair of the masked second-order scheme via the 2n
/// expectation recurrence.
VectorPair exact_mean_chebyshev(const DenseMatrix& a, const DenseVector& v, double eta,
                                double nu, double nu_hat, double t_mean, index_t m,
                                const VectorPair& d0);

/// Sequence-enumeration cross-check for exact_mean_chebyshev.
VectorPair enumerated_mean_chebyshev(const DenseMatrix& a, const DenseVector& v, double eta,
                                     double nu, double nu_hat, index_t t, index_t m,
                                     const VectorPair& d0);

/// Mean of the accumulated product sum F_m: sum_{j=1..m} B^j with
/// B = I - (expected_t/n)*omega_hat*A. For the corrected weight and a
/// convergent base iteration this approaches (omega*A)^{-1} - I.
DenseMatrix expected_fm(const DenseMatrix& a, double omega_hat, double expected_t, index_t m);

/// Dense partial-pivoting solve; the reference linear solver for tests.
DenseVector dense_solve(const DenseMatrix& a, const DenseVector& b);

/// Eigenvalues of a symmetric matrix in ascending order.
DenseVector sym_eigenvalues(const DenseMatrix& a);

DenseVector dense_matvec(const DenseMatrix& a, const DenseVector& x);

} // namespace oracle
} // namespace stsolve

#endif // STSOLVE_ORACLE_HPP
