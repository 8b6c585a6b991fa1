#include "stsolve/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsolve {

namespace {

// One masked first-order step: out = (z + omega*v) - weight*(D A z).
// The additive part covers every row; the product only masked rows.
// A null mask means all rows. Both solvers and both limits run through
// this kernel so the classical limit matches bitwise.
void richardson_step(const SparseMatrix& a, const DenseVector& z, const DenseVector& v,
                     double omega, double weight, const std::vector<index_t>* mask,
                     DenseVector& out) {
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = z[i] + omega * v[i];
    if (mask == nullptr) {
        for (index_t i = 0; i < a.n; ++i)
            out[static_cast<std::size_t>(i)] -= weight * a.row_dot(i, z);
    } else {
        for (index_t i : *mask) out[static_cast<std::size_t>(i)] -= weight * a.row_dot(i, z);
    }
}

// Masked second-order step:
// out = z + eta*(z - z_prev) + nu*v - weight*(D A z).
// The eta term is skipped when eta == 0 so the degenerate case runs the
// exact same arithmetic as the first-order kernel.
void chebyshev_step(const SparseMatrix& a, const DenseVector& z, const DenseVector& z_prev,
                    const DenseVector& v, double eta, double nu, double weight,
                    const std::vector<index_t>* mask, DenseVector& out) {
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = z[i];
        if (eta != 0.0) acc += eta * (z[i] - z_prev[i]);
        acc += nu * v[i];
        out[i] = acc;
    }
    if (mask == nullptr) {
        for (index_t i = 0; i < a.n; ++i)
            out[static_cast<std::size_t>(i)] -= weight * a.row_dot(i, z);
    } else {
        for (index_t i : *mask) out[static_cast<std::size_t>(i)] -= weight * a.row_dot(i, z);
    }
}

std::vector<index_t> checked_snapshots(std::vector<index_t> at, index_t m) {
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());
    if (!at.empty() && (at.front() < 0 || at.back() > m))
        throw std::invalid_argument("snapshot index outside [0, m]");
    return at;
}

void check_dimensions(const SparseMatrix& a, const DenseVector& v, const DenseVector& z0) {
    if (static_cast<index_t>(v.size()) != a.n ||
        static_cast<index_t>(z0.size()) != a.n)
        throw std::invalid_argument("solver dimension mismatch");
}

struct SnapshotCursor {
    const std::vector<index_t>& at;
    std::size_t pos = 0;

    bool wants(index_t i) {
        if (pos < at.size() && at[pos] == i) {
            ++pos;
            return true;
        }
        return false;
    }
};

} // namespace

double omega_cr(const SpectralBounds& bounds) {
    if (!(bounds.lambda_min > 0.0) || !(bounds.lambda_max >= bounds.lambda_min))
        throw std::invalid_argument("spectral bounds must satisfy 0 < lambda_min <= lambda_max");
    return 2.0 / (bounds.lambda_min + bounds.lambda_max);
}

ChebyshevCoeffs chebyshev_coeffs(double alpha, double beta) {
    if (!(alpha > 0.0) || !(alpha < beta))
        throw std::invalid_argument("need 0 < alpha < beta");
    const double c = (alpha + beta) / (beta - alpha);
    const double rho = 1.0 / (c + std::sqrt(c * c - 1.0));  // stable form of c - sqrt(c^2-1)
    const double delta = (alpha + beta) / 2.0;
    return ChebyshevCoeffs{rho * rho, 2.0 * rho / delta};
}

IterateTrace richardson_classical(const SparseMatrix& a, const DenseVector& v,
                                  const RichardsonParams& params,
                                  const std::vector<index_t>& snapshot_at) {
    check_dimensions(a, v, params.z0);
    if (params.m < 0) throw std::invalid_argument("iteration count must be >= 0");
    const std::vector<index_t> at = checked_snapshots(snapshot_at, params.m);
    SnapshotCursor cursor{at};

    IterateTrace trace;
    DenseVector cur = params.z0;
    DenseVector next(cur.size());
    if (cursor.wants(0)) trace.snapshots.emplace_back(0, cur);
    for (index_t i = 1; i <= params.m; ++i) {
        richardson_step(a, cur, v, params.omega, params.omega, nullptr, next);
        std::swap(cur, next);
        if (cursor.wants(i)) trace.snapshots.emplace_back(i, cur);
    }
    trace.final_iterate = std::move(cur);
    return trace;
}

IterateTrace richardson_straggler(const SparseMatrix& a, const DenseVector& v,
                                  const RichardsonParams& params,
                                  const StraggleDistribution& dist, const SeedSpec& seed,
                                  const std::vector<index_t>& snapshot_at) {
    check_dimensions(a, v, params.z0);
    if (params.m < 0) throw std::invalid_argument("iteration count must be >= 0");
    if (dist.n != a.n) throw std::invalid_argument("distribution dimension mismatch");
    const std::vector<index_t> at = checked_snapshots(snapshot_at, params.m);
    SnapshotCursor cursor{at};

    IterateTrace trace;
    DenseVector cur = params.z0;
    DenseVector next(cur.size());
    if (cursor.wants(0)) trace.snapshots.emplace_back(0, cur);
    SeedSpec spec = seed;
    for (index_t i = 1; i <= params.m; ++i) {
        spec.iteration_index = static_cast<std::uint64_t>(i);
        const index_t t = sample_t(dist, spec);
        const RowMask mask = sample_mask(t, a.n, spec);
        richardson_step(a, cur, v, params.omega, params.omega_hat, &mask.indices, next);
        std::swap(cur, next);
        if (cursor.wants(i)) trace.snapshots.emplace_back(i, cur);
    }
    trace.final_iterate = std::move(cur);
    return trace;
}

IterateTrace chebyshev_classical(const SparseMatrix& a, const DenseVector& v,
                                 const ChebyshevParams& params,
                                 const std::vector<index_t>& snapshot_at) {
    check_dimensions(a, v, params.z0);
    if (params.m < 0) throw std::invalid_argument("iteration count must be >= 0");
    if (!params.z_minus1.empty() &&
        static_cast<index_t>(params.z_minus1.size()) != a.n)
        throw std::invalid_argument("solver dimension mismatch");
    const std::vector<index_t> at = checked_snapshots(snapshot_at, params.m);
    SnapshotCursor cursor{at};

    IterateTrace trace;
    DenseVector prev = params.z_minus1.empty() ? params.z0 : params.z_minus1;
    DenseVector cur = params.z0;
    DenseVector next(cur.size());
    if (cursor.wants(0)) trace.snapshots.emplace_back(0, cur);
    for (index_t i = 1; i <= params.m; ++i) {
        chebyshev_step(a, cur, prev, v, params.eta, params.nu, params.nu, nullptr, next);
        std::swap(prev, cur);  // prev <- old cur
        std::swap(cur, next);  // cur <- new iterate, next buffer recycled
        if (cursor.wants(i)) trace.snapshots.emplace_back(i, cur);
    }
    trace.final_iterate = std::move(cur);
    return trace;
}

IterateTrace chebyshev_straggler(const SparseMatrix& a, const DenseVector& v,
                                 const ChebyshevParams& params,
                                 const StraggleDistribution& dist, const SeedSpec& seed,
                                 const std::vector<index_t>& snapshot_at) {
    check_dimensions(a, v, params.z0);
    if (params.m < 0) throw std::invalid_argument("iteration count must be >= 0");
    if (dist.n != a.n) throw std::invalid_argument("distribution dimension mismatch");
    if (!params.z_minus1.empty() &&
        static_cast<index_t>(params.z_minus1.size()) != a.n)
        throw std::invalid_argument("solver dimension mismatch");
    const std::vector<index_t> at = checked_snapshots(snapshot_at, params.m);
    SnapshotCursor cursor{at};

    IterateTrace trace;
    DenseVector prev = params.z_minus1.empty() ? params.z0 : params.z_minus1;
    DenseVector cur = params.z0;
    DenseVector next(cur.size());
    if (cursor.wants(0)) trace.snapshots.emplace_back(0, cur);
    SeedSpec spec = seed;
    for (index_t i = 1; i <= params.m; ++i) {
        spec.iteration_index = static_cast<std::uint64_t>(i);
        const index_t t = sample_t(dist, spec);
        const RowMask mask = sample_mask(t, a.n, spec);
        chebyshev_step(a, cur, prev, v, params.eta, params.nu, params.nu_hat, &mask.indices,
                       next);
        std::swap(prev, cur);
        std::swap(cur, next);
        if (cursor.wants(i)) trace.snapshots.emplace_back(i, cur);
    }
    trace.final_iterate = std::move(cur);
    return trace;
}

} // namespace stsolve
