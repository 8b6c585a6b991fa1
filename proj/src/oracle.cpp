#include "stsolve/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace stsolve {
namespace oracle {

namespace {

void check_dim_cap(index_t n) {
    if (n < 1 || n > kDimCap)
        throw std::invalid_argument("oracle dimension cap exceeded (n <= " +
                                    std::to_string(kDimCap) + ")");
}

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd m(a.n, a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j) m(i, j) = a.at(i, j);
    return m;
}

void check_vector(const DenseMatrix& a, const DenseVector& x, const char* what) {
    if (static_cast<index_t>(x.size()) != a.n)
        throw std::invalid_argument(std::string(what) + " length does not match dimension");
}

// B = I - scale * A
DenseMatrix shifted_base(const DenseMatrix& a, double scale) {
    DenseMatrix b = DenseMatrix::identity(a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j) b.at(i, j) -= scale * a.at(i, j);
    return b;
}

double row_times(const DenseMatrix& a, index_t i, const DenseVector& x) {
    double acc = 0.0;
    for (index_t j = 0; j < a.n; ++j) acc += a.at(i, j) * x[static_cast<std::size_t>(j)];
    return acc;
}

// one masked first-order step on the dense mirror
DenseVector dense_masked_step(const DenseMatrix& a, const DenseVector& cur,
                              const DenseVector& v, double omega, double omega_hat,
                              const RowMask& mask) {
    DenseVector next(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) next[j] = cur[j] + omega * v[j];
    for (index_t i : mask.indices)
        next[static_cast<std::size_t>(i)] -= omega_hat * row_times(a, i, cur);
    return next;
}

// one masked second-order step on the dense mirror
VectorPair dense_masked_cheb_step(const DenseMatrix& a, const VectorPair& d,
                                  const DenseVector& v, double eta, double nu, double nu_hat,
                                  const RowMask& mask) {
    DenseVector next(d.current.size());
    for (std::size_t j = 0; j < d.current.size(); ++j)
        next[j] = d.current[j] + eta * (d.current[j] - d.previous[j]) + nu * v[j];
    for (index_t i : mask.indices)
        next[static_cast<std::size_t>(i)] -= nu_hat * row_times(a, i, d.current);
    return VectorPair{std::move(next), d.current};
}

void check_sequence_budget(index_t n, index_t t, index_t m) {
    const double total = std::pow(binomial(n, t), static_cast<double>(m));
    if (total > kSequenceEnumerationCap)
        throw std::invalid_argument("sequence enumeration cap exceeded");
}

} // namespace

DenseMatrix::DenseMatrix(index_t dim) : n(dim) {
    check_dim_cap(dim);
    entries.assign(static_cast<std::size_t>(n * n), 0.0);
}

DenseMatrix DenseMatrix::identity(index_t dim) {
    DenseMatrix m(dim);
    for (index_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& a) {
    DenseMatrix m(a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            m.at(i, a.col_indices[static_cast<std::size_t>(k)]) =
                a.values[static_cast<std::size_t>(k)];
    return m;
}

double binomial(index_t n, index_t k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (index_t i = 1; i <= k; ++i)
        acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(acc);
}

std::vector<RowMask> enumerate_masks(index_t n, index_t t) {
    if (n < 1 || n > kEnumerationDimCap)
        throw std::invalid_argument("mask enumeration cap exceeded (n <= " +
                                    std::to_string(kEnumerationDimCap) + ")");
    if (t < 1 || t > n) throw std::invalid_argument("mask cardinality outside [1, n]");
    std::vector<RowMask> masks;
    masks.reserve(static_cast<std::size_t>(binomial(n, t)));
    std::vector<index_t> cur(static_cast<std::size_t>(t));
    for (index_t i = 0; i < t; ++i) cur[static_cast<std::size_t>(i)] = i;
    for (;;) {
        masks.push_back(RowMask{cur});
        // advance to the next combination in lexicographic order
        index_t i = t - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - t + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (index_t j = i + 1; j < t; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j) - 1] + 1;
    }
    return masks;
}

DenseMatrix expected_perturbation(const DenseMatrix& a, double omega_hat, index_t t) {
    check_dim_cap(a.n);
    const std::vector<RowMask> masks = enumerate_masks(a.n, t);
    DenseMatrix acc(a.n);
    std::vector<bool> in_mask(static_cast<std::size_t>(a.n));
    for (const RowMask& mask : masks) {
        std::fill(in_mask.begin(), in_mask.end(), false);
        for (index_t i : mask.indices) in_mask[static_cast<std::size_t>(i)] = true;
        for (index_t i = 0; i < a.n; ++i) {
            if (in_mask[static_cast<std::size_t>(i)]) continue;
            for (index_t j = 0; j < a.n; ++j) acc.at(i, j) += a.at(i, j);
        }
    }
    const double scale = omega_hat / static_cast<double>(masks.size());
    for (double& e : acc.entries) e *= scale;

    // the average must reproduce ((n-t)/n) * omega_hat * A
    double max_abs = 0.0;
    for (double e : a.entries) max_abs = std::max(max_abs, std::abs(e));
    const double tol = 1e-13 * std::max(1.0, std::abs(omega_hat) * max_abs);
    const double factor =
        (static_cast<double>(a.n - t) / static_cast<double>(a.n)) * omega_hat;
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j)
            if (std::abs(acc.at(i, j) - factor * a.at(i, j)) > tol)
                throw std::logic_error("perturbation average drifted from closed form");
    return acc;
}

DenseVector exact_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                               double omega_hat, double t_mean, index_t m,
                               const DenseVector& z0) {
    check_dim_cap(a.n);
    check_vector(a, v, "rhs");
    check_vector(a, z0, "start iterate");
    if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
    const DenseMatrix b = shifted_base(a, (t_mean / static_cast<double>(a.n)) * omega_hat);
    DenseVector mu = z0;
    DenseVector next(mu.size());
    for (index_t i = 1; i <= m; ++i) {
        for (index_t r = 0; r < a.n; ++r)
            next[static_cast<std::size_t>(r)] =
                row_times(b, r, mu) + omega * v[static_cast<std::size_t>(r)];
        std::swap(mu, next);
    }
    return mu;
}

DenseVector exact_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                               double omega_hat, const StraggleDistribution& dist, index_t m,
                               const DenseVector& z0) {
    return exact_mean_iterate(a, v, omega, omega_hat, expected_t(dist), m, z0);
}

DenseVector enumerated_mean_iterate(const DenseMatrix& a, const DenseVector& v, double omega,
                                    double omega_hat, index_t t, index_t m,
                                    const DenseVector& z0) {
    check_dim_cap(a.n);
    check_vector(a, v, "rhs");
    check_vector(a, z0, "start iterate");
    if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
    check_sequence_budget(a.n, t, m);
    const std::vector<RowMask> masks = enumerate_masks(a.n, t);

    DenseVector acc(z0.size(), 0.0);
    double count = 0.0;
    // depth-first walk over mask sequences, lexicographic order
    auto walk = [&](auto&& self, index_t depth, const DenseVector& cur) -> void {
        if (depth == m) {
            for (std::size_t j = 0; j < cur.size(); ++j) acc[j] += cur[j];
            count += 1.0;
            return;
        }
        for (const RowMask& mask : masks)
            self(self, depth + 1, dense_masked_step(a, cur, v, omega, omega_hat, mask));
    };
    walk(walk, 0, z0);
    for (double& x : acc) x /= count;
    return acc;
}

DenseVector closed_form_mean(const DenseMatrix& a, const DenseVector& v, double omega,
                             double omega_hat, double expected_t, index_t m) {
    check_dim_cap(a.n);
    check_vector(a, v, "rhs");
    if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
    const double scale = (expected_t / static_cast<double>(a.n)) * omega_hat;
    const Eigen::MatrixXd mat = scale * to_eigen(a);
    const Eigen::MatrixXd base =
        Eigen::MatrixXd::Identity(a.n, a.n) - mat;  // I - M
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(v.data(), a.n);
    for (index_t k = 0; k <= m; ++k) w = base * w;  // (I - M)^{m+1} v

    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    if (!lu.isInvertible())
        throw std::domain_error("mean-iterate system is singular");
    const Eigen::VectorXd rhs =
        omega * (Eigen::Map<const Eigen::VectorXd>(v.data(), a.n) - w);
    const Eigen::VectorXd x = lu.solve(rhs);
    return DenseVector(x.data(), x.data() + x.size());
}

VectorPair exact_mean_chebyshev(const DenseMatrix& a, const DenseVector& v, double eta,
                                double nu, double nu_hat, double t_mean, index_t m,
                                const VectorPair& d0) {
    check_dim_cap(a.n);
    check_vector(a, v, "rhs");
    check_vector(a, d0.current, "start iterate");
    check_vector(a, d0.previous, "start iterate");
    if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
    const double scale = (t_mean / static_cast<double>(a.n)) * nu_hat;
    DenseVector p = d0.current;
    DenseVector q = d0.previous;
    DenseVector next(p.size());
    for (index_t i = 1; i <= m; ++i) {
        for (index_t r = 0; r < a.n; ++r) {
            const std::size_t rr = static_cast<std::size_t>(r);
            next[rr] = p[rr] + eta * (p[rr] - q[rr]) + nu * v[rr] - scale * row_times(a, r, p);
        }
        q = p;
        std::swap(p, next);
    }
    return VectorPair{std::move(p), std::move(q)};
}

VectorPair enumerated_mean_chebyshev(const DenseMatrix& a, const DenseVector& v, double eta,
                                     double nu, double nu_hat, index_t t, index_t m,
                                     const VectorPair& d0) {
    check_dim_cap(a.n);
    check_vector(a, v, "rhs");
    check_vector(a, d0.current, "start iterate");
    check_vector(a, d0.previous, "start iterate");
    if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
    check_sequence_budget(a.n, t, m);
    const std::vector<RowMask> masks = enumerate_masks(a.n, t);

    DenseVector acc_cur(d0.current.size(), 0.0);
    DenseVector acc_prev(d0.previous.size(), 0.0);
    double count = 0.0;
    auto walk = [&](auto&& self, index_t depth, const VectorPair& d) -> void {
        if (depth == m) {
            for (std::size_t j = 0; j < acc_cur.size(); ++j) {
                acc_cur[j] += d.current[j];
                acc_prev[j] += d.previous[j];
            }
            count += 1.0;
            return;
        }
        for (const RowMask& mask : masks)
            self(self, depth + 1, dense_masked_cheb_step(a, d, v, eta, nu, nu_hat, mask));
    };
    walk(walk, 0, d0);
    for (double& x : acc_cur) x /= count;
    for (double& x : acc_prev) x /= count;
    return VectorPair{std::move(acc_cur), std::move(acc_prev)};
}

DenseMatrix expected_fm(const DenseMatrix& a, double omega_hat, double expected_t,
                        index_t m) {
    check_dim_cap(a.n);
    if (m < 1) throw std::invalid_argument("iteration count must be >= 1");
    const Eigen::MatrixXd b =
        to_eigen(shifted_base(a, (expected_t / static_cast<double>(a.n)) * omega_hat));
    Eigen::MatrixXd power = b;
    Eigen::MatrixXd sum = b;
    for (index_t j = 2; j <= m; ++j) {
        power = power * b;
        sum += power;
    }
    DenseMatrix out(a.n);
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j) out.at(i, j) = sum(i, j);
    return out;
}

DenseVector dense_solve(const DenseMatrix& a, const DenseVector& b) {
    check_dim_cap(a.n);
    check_vector(a, b, "rhs");
    const Eigen::VectorXd x =
        to_eigen(a).partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), a.n));
    return DenseVector(x.data(), x.data() + x.size());
}

DenseVector sym_eigenvalues(const DenseMatrix& a) {
    check_dim_cap(a.n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigendecomposition failed");
    const Eigen::VectorXd ev = solver.eigenvalues();
    return DenseVector(ev.data(), ev.data() + ev.size());
}

DenseVector dense_matvec(const DenseMatrix& a, const DenseVector& x) {
    check_vector(a, x, "vector");
    DenseVector y(static_cast<std::size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) y[static_cast<std::size_t>(i)] = row_times(a, i, x);
    return y;
}

} // namespace oracle
} // namespace stsolve
