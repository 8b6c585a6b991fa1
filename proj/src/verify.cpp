#include "stsolve/verify.hpp"

#include "stsolve/oracle.hpp"
#include "stsolve/rng.hpp"
#include "stsolve/solvers.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace stsolve {
namespace verify {

namespace {

using oracle::DenseMatrix;

DenseMatrix random_matrix(index_t n, SplitMix64& stream) {
    DenseMatrix a(n);
    for (double& e : a.entries) e = 2.0 * stream.next_double() - 1.0;
    return a;
}

// M^T M + n*I: SPD and comfortably conditioned
DenseMatrix random_spd(index_t n, SplitMix64& stream) {
    const DenseMatrix m = random_matrix(n, stream);
    DenseMatrix a(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (index_t k = 0; k < n; ++k) acc += m.at(k, i) * m.at(k, j);
            a.at(i, j) = acc + (i == j ? static_cast<double>(n) : 0.0);
        }
    return a;
}

DenseVector random_vector(index_t n, SplitMix64& stream) {
    DenseVector v(static_cast<std::size_t>(n));
    for (double& x : v) x = 2.0 * stream.next_double() - 1.0;
    return v;
}

SparseMatrix to_sparse(const DenseMatrix& a) {
    std::vector<SparseMatrix::Triplet> triplets;
    for (index_t i = 0; i < a.n; ++i)
        for (index_t j = 0; j < a.n; ++j)
            if (a.at(i, j) != 0.0) triplets.push_back({i, j, a.at(i, j)});
    return SparseMatrix::from_triplets(a.n, std::move(triplets));
}

double max_abs_diff(const DenseVector& x, const DenseVector& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

double norm2_diff(const DenseVector& x, const DenseVector& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double norm2(const DenseVector& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

double optimal_omega(const DenseMatrix& a) {
    const DenseVector ev = oracle::sym_eigenvalues(a);
    return 2.0 / (ev.front() + ev.back());
}

CheckResult fail(std::string name, std::string detail) {
    return CheckResult{std::move(name), false, std::move(detail)};
}

CheckResult pass(std::string name, std::string detail = "") {
    return CheckResult{std::move(name), true, std::move(detail)};
}

} // namespace

CheckResult check_perturbation_closed_form(int reps) {
    const std::string name = "mask-averaged perturbation equals closed form";
    double worst = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{0x51d5u, static_cast<std::uint64_t>(rep), 0}, StreamRole::start_vector);
        for (index_t n = 2; n <= 6; ++n) {
            const DenseMatrix a = random_matrix(n, stream);
            const double omega_hat = 0.25 + stream.next_double();
            for (index_t t = 1; t <= n; ++t) {
                DenseMatrix avg;
                try {
                    avg = oracle::expected_perturbation(a, omega_hat, t);
                } catch (const std::logic_error& e) {
                    return fail(name, e.what());
                }
                const double factor =
                    (static_cast<double>(n - t) / static_cast<double>(n)) * omega_hat;
                for (index_t i = 0; i < n; ++i)
                    for (index_t j = 0; j < n; ++j)
                        worst = std::max(worst,
                                         std::abs(avg.at(i, j) - factor * a.at(i, j)));
            }
        }
    }
    std::ostringstream detail;
    detail << "max per-entry deviation " << worst;
    return worst <= 1e-13 ? pass(name, detail.str()) : fail(name, detail.str());
}

CheckResult check_corrected_step_unbiased(int reps) {
    const std::string name = "corrected weight makes the sampled step unbiased";
    double worst = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{0xb1a5u, static_cast<std::uint64_t>(rep), 0}, StreamRole::start_vector);
        for (index_t n = 2; n <= 6; ++n) {
            const DenseMatrix a = random_matrix(n, stream);
            const double omega = 0.1 + stream.next_double();
            for (index_t t = 1; t <= n; ++t) {
                const double omega_hat =
                    (static_cast<double>(n) / static_cast<double>(t)) * omega;
                const std::vector<RowMask> masks = oracle::enumerate_masks(n, t);
                DenseMatrix avg(n);
                for (const RowMask& mask : masks) {
                    // I - omega_hat * D A, accumulated mask by mask
                    for (index_t i = 0; i < n; ++i) avg.at(i, i) += 1.0;
                    for (index_t i : mask.indices)
                        for (index_t j = 0; j < n; ++j)
                            avg.at(i, j) -= omega_hat * a.at(i, j);
                }
                const double inv_count = 1.0 / static_cast<double>(masks.size());
                for (index_t i = 0; i < n; ++i)
                    for (index_t j = 0; j < n; ++j) {
                        const double expected =
                            (i == j ? 1.0 : 0.0) - omega * a.at(i, j);
                        worst = std::max(worst, std::abs(avg.at(i, j) * inv_count - expected));
                    }
            }
        }
    }
    std::ostringstream detail;
    detail << "max per-entry deviation " << worst;
    return worst <= 1e-13 ? pass(name, detail.str()) : fail(name, detail.str());
}

CheckResult check_first_order_mean_exact() {
    const std::string name = "first-order sampled mean equals classical iterate";
    struct Case {
        index_t n, t, m;
    };
    const Case cases[] = {{3, 2, 2}, {4, 2, 3}, {5, 3, 3}, {8, 6, 2}, {8, 4, 1}};
    double worst_vs_classical = 0.0;
    double worst_vs_recurrence = 0.0;
    int idx = 0;
    for (const Case& c : cases) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{0x3e4u, static_cast<std::uint64_t>(idx++), 0}, StreamRole::start_vector);
        const DenseMatrix a = random_spd(c.n, stream);
        const DenseVector v = random_vector(c.n, stream);
        const DenseVector z0 = random_vector(c.n, stream);
        const double omega = optimal_omega(a);
        const double omega_hat =
            (static_cast<double>(c.n) / static_cast<double>(c.t)) * omega;

        const DenseVector enumerated =
            oracle::enumerated_mean_iterate(a, v, omega, omega_hat, c.t, c.m, z0);
        const DenseVector recurrence = oracle::exact_mean_iterate(
            a, v, omega, omega_hat, static_cast<double>(c.t), c.m, z0);

        RichardsonParams params;
        params.omega = omega;
        params.m = c.m;
        params.z0 = z0;
        const IterateTrace classical = richardson_classical(to_sparse(a), v, params);

        worst_vs_recurrence =
            std::max(worst_vs_recurrence, max_abs_diff(enumerated, recurrence));
        worst_vs_classical =
            std::max(worst_vs_classical, max_abs_diff(enumerated, classical.final_iterate));
    }
    std::ostringstream detail;
    detail << "enumeration vs classical " << worst_vs_classical
           << ", enumeration vs recurrence " << worst_vs_recurrence;
    const bool ok = worst_vs_classical <= 1e-12 && worst_vs_recurrence <= 1e-13;
    return ok ? pass(name, detail.str()) : fail(name, detail.str());
}

CheckResult check_second_order_mean_exact() {
    const std::string name = "second-order sampled mean equals classical pair";
    struct Case {
        index_t n, t, m;
    };
    const Case cases[] = {{3, 2, 2}, {4, 3, 3}, {5, 3, 2}, {8, 6, 2}};
    double worst_vs_classical = 0.0;
    double worst_vs_recurrence = 0.0;
    int idx = 0;
    for (const Case& c : cases) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{0xc4ebu, static_cast<std::uint64_t>(idx++), 0}, StreamRole::start_vector);
        const DenseMatrix a = random_spd(c.n, stream);
        const DenseVector v = random_vector(c.n, stream);
        const DenseVector z0 = random_vector(c.n, stream);
        const DenseVector ev = oracle::sym_eigenvalues(a);
        const ChebyshevCoeffs coeffs =
            chebyshev_coeffs(0.9 * ev.front(), 1.1 * ev.back());
        const double nu_hat =
            (static_cast<double>(c.n) / static_cast<double>(c.t)) * coeffs.nu;
        const oracle::VectorPair d0{z0, z0};

        const oracle::VectorPair enumerated = oracle::enumerated_mean_chebyshev(
            a, v, coeffs.eta, coeffs.nu, nu_hat, c.t, c.m, d0);
        const oracle::VectorPair recurrence = oracle::exact_mean_chebyshev(
            a, v, coeffs.eta, coeffs.nu, nu_hat, static_cast<double>(c.t), c.m, d0);

        ChebyshevParams params;
        params.eta = coeffs.eta;
        params.nu = coeffs.nu;
        params.m = c.m;
        params.z0 = z0;
        const IterateTrace classical =
            chebyshev_classical(to_sparse(a), v, params, {c.m - 1, c.m});

        worst_vs_recurrence = std::max(
            {worst_vs_recurrence, max_abs_diff(enumerated.current, recurrence.current),
             max_abs_diff(enumerated.previous, recurrence.previous)});
        worst_vs_classical = std::max(
            {worst_vs_classical,
             max_abs_diff(enumerated.current, classical.snapshots[1].second),
             max_abs_diff(enumerated.previous, classical.snapshots[0].second)});
    }
    std::ostringstream detail;
    detail << "enumeration vs classical " << worst_vs_classical
           << ", enumeration vs recurrence " << worst_vs_recurrence;
    const bool ok = worst_vs_classical <= 1e-12 && worst_vs_recurrence <= 1e-13;
    return ok ? pass(name, detail.str()) : fail(name, detail.str());
}

CheckResult check_uncorrected_bias_nonzero() {
    const std::string name = "uncorrected weight leaves a nonzero mean offset";
    SplitMix64 stream = SplitMix64::from(SeedSpec{0xb1a5edu, 0, 0}, StreamRole::start_vector);
    const index_t n = 4, t = 2;
    const DenseMatrix a = random_spd(n, stream);
    const DenseVector v = random_vector(n, stream);
    const DenseVector z0(static_cast<std::size_t>(n), 0.0);
    const double omega = optimal_omega(a);

    RichardsonParams params;
    params.omega = omega;
    params.z0 = z0;
    double worst = 0.0;
    for (index_t m = 1; m <= 5; ++m) {
        const DenseVector mean = oracle::exact_mean_iterate(
            a, v, omega, omega, static_cast<double>(t), m, z0);
        params.m = m;
        const IterateTrace classical = richardson_classical(to_sparse(a), v, params);
        worst = std::max(worst, norm2_diff(mean, classical.final_iterate));
    }
    std::ostringstream detail;
    detail << "largest offset norm " << worst;
    return worst > 1e-8 ? pass(name, detail.str()) : fail(name, detail.str());
}

CheckResult check_closed_form_mean() {
    const std::string name = "closed-form mean matches recurrence and converges";
    const index_t n = 8;
    double worst_match = 0.0;
    bool geometric_ok = true;
    std::ostringstream detail;
    for (int rep = 0; rep < 10; ++rep) {
        SplitMix64 stream = SplitMix64::from(
            SeedSpec{0xc105edu, static_cast<std::uint64_t>(rep), 0}, StreamRole::start_vector);
        const DenseMatrix a = random_spd(n, stream);
        const DenseVector v = random_vector(n, stream);
        const DenseVector ev = oracle::sym_eigenvalues(a);
        const double omega = 2.0 / (ev.front() + ev.back());
        const double t_mean = 5.5;  // fractional mean row count is legal here
        const double omega_hat = (static_cast<double>(n) / t_mean) * omega;

        DenseVector z0(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < z0.size(); ++i) z0[i] = omega * v[i];

        const DenseVector solution = oracle::dense_solve(a, v);
        const double rho = std::max(std::abs(1.0 - omega * ev.front()),
                                    std::abs(1.0 - omega * ev.back()));
        const double vnorm = norm2(v);

        double prev_err = std::numeric_limits<double>::infinity();
        for (index_t m = 1; m <= 50; ++m) {
            const DenseVector closed =
                oracle::closed_form_mean(a, v, omega, omega_hat, t_mean, m);
            const DenseVector rec =
                oracle::exact_mean_iterate(a, v, omega, omega_hat, t_mean, m, z0);
            worst_match = std::max(worst_match, max_abs_diff(closed, rec));

            const double err = norm2_diff(closed, solution);
            const double bound =
                1.1 * std::pow(rho, static_cast<double>(m + 1)) * vnorm / ev.front();
            if (err > bound + 1e-12 || err > prev_err + 1e-12) {
                geometric_ok = false;
                detail << "decay violated at rep " << rep << " m " << m << " err " << err
                       << " bound " << bound << "; ";
            }
            prev_err = err;
        }
    }
    detail << "max closed-form vs recurrence deviation " << worst_match;
    const bool ok = worst_match <= 1e-12 && geometric_ok;
    return ok ? pass(name, detail.str()) : fail(name, detail.str());
}

std::vector<CheckResult> run_all_checks() {
    std::vector<CheckResult> results;
    results.push_back(check_perturbation_closed_form(20));
    results.push_back(check_corrected_step_unbiased(20));
    results.push_back(check_first_order_mean_exact());
    results.push_back(check_second_order_mean_exact());
    results.push_back(check_uncorrected_bias_nonzero());
    results.push_back(check_closed_form_mean());
    return results;
}

bool run_verification_suite(std::ostream& out) {
    bool all_ok = true;
    for (const CheckResult& r : run_all_checks()) {
        out << (r.ok ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << "\n";
        all_ok = all_ok && r.ok;
    }
    return all_ok;
}

} // namespace verify
} // namespace stsolve
