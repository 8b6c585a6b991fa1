#include "stsolve/harness.hpp"

#include "stsolve/laplacian.hpp"
#include "stsolve/matrix_market.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stsolve {

std::string to_string(Method m) {
    return m == Method::richardson ? "richardson" : "chebyshev";
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::classical: return "classical";
        case Mode::straggler_corrected: return "straggler_corrected";
        case Mode::straggler_uncorrected: return "straggler_uncorrected";
    }
    return "unknown";
}

double mse(const DenseVector& x) {
    if (x.empty()) throw std::invalid_argument("mse of empty vector");
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc / static_cast<double>(x.size());
}

std::vector<index_t> prefix_grid(index_t trials) {
    std::vector<index_t> grid;
    for (index_t decade = 1; decade < trials; decade *= 10) {
        for (index_t f : {1, 2, 5}) {
            const index_t v = f * decade;
            if (v < trials) grid.push_back(v);
            if (v >= trials) break;
        }
    }
    grid.push_back(trials);
    return grid;
}

namespace {

double mse_diff(const DenseVector& a, const DenseVector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate_config(const ExperimentConfig& c) {
    if (c.matrix_path.empty() == (c.laplacian_n == 0))
        throw std::invalid_argument("config needs exactly one of matrix_path / laplacian_n");
    if (c.m_values.empty()) throw std::invalid_argument("m_values must be nonempty");
    for (std::size_t i = 0; i < c.m_values.size(); ++i) {
        if (c.m_values[i] < 0) throw std::invalid_argument("m values must be >= 0");
        if (i > 0 && c.m_values[i] <= c.m_values[i - 1])
            throw std::invalid_argument("m_values must be strictly ascending");
    }
    if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(c.tau > 0.0) || c.tau > 1.0) throw std::invalid_argument("tau must be in (0, 1]");
    if (c.half_width < 0) throw std::invalid_argument("half_width must be >= 0");
    if (c.bounds == BoundsMode::explicit_bounds &&
        (!(c.lambda_min > 0.0) || !(c.lambda_max >= c.lambda_min)))
        throw std::invalid_argument("explicit bounds must satisfy 0 < lambda_min <= lambda_max");
    if (!(c.alpha_factor > 0.0) || !(c.beta_factor > 0.0))
        throw std::invalid_argument("enclosure factors must be positive");
    if (c.rhs == RhsKind::file && c.rhs_path.empty())
        throw std::invalid_argument("rhs file path missing");
}

SparseMatrix load_matrix(const ExperimentConfig& c) {
    if (!c.matrix_path.empty()) return load_matrix_market(c.matrix_path);
    return gen_laplacian_3d(c.laplacian_n);
}

DenseVector make_rhs(const ExperimentConfig& c, const SparseMatrix& a) {
    if (c.rhs == RhsKind::file) {
        DenseVector v = load_dense_vector(c.rhs_path);
        if (static_cast<index_t>(v.size()) != a.n)
            throw std::invalid_argument("rhs length does not match matrix dimension");
        return v;
    }
    return matvec(a, DenseVector(static_cast<std::size_t>(a.n), 1.0));
}

DenseVector make_initial(const ExperimentConfig& c, const DenseVector& v,
                         double step_scalar) {
    DenseVector z0(v.size(), 0.0);
    switch (c.initial) {
        case InitialKind::zero:
            break;
        case InitialKind::gaussian: {
            // one shared start vector: the deterministic reference and
            // every trial must begin from the same point
            SplitMix64 stream =
                SplitMix64::from(SeedSpec{c.master_seed, 0, 0}, StreamRole::initial_guess);
            for (double& x : z0) x = stream.next_gaussian();
            break;
        }
        case InitialKind::omega_v:
            for (std::size_t i = 0; i < v.size(); ++i) z0[i] = step_scalar * v[i];
            break;
    }
    return z0;
}

double norm2(const DenseVector& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

// high-accuracy solution of A z = v: dense factorization when small,
// second-order iteration driven to a 1e-12 relative residual otherwise
DenseVector reference_solution(const SparseMatrix& a, const DenseVector& v,
                               const SpectralBounds& bounds, const ExperimentConfig& c) {
    const double vnorm = norm2(v);
    if (vnorm == 0.0) return DenseVector(v.size(), 0.0);
    if (a.n <= 2000) {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(a.n, a.n);
        for (index_t i = 0; i < a.n; ++i)
            for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
                 k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
                dense(i, a.col_indices[static_cast<std::size_t>(k)]) =
                    a.values[static_cast<std::size_t>(k)];
        const Eigen::VectorXd x =
            dense.partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(v.data(), a.n));
        return DenseVector(x.data(), x.data() + x.size());
    }
    const ChebyshevCoeffs coeffs = chebyshev_coeffs(c.alpha_factor * bounds.lambda_min,
                                                    c.beta_factor * bounds.lambda_max);
    ChebyshevParams params;
    params.eta = coeffs.eta;
    params.nu = coeffs.nu;
    params.m = 200;
    params.z0.assign(v.size(), 0.0);
    const index_t max_rounds = 1000;
    for (index_t round = 0; round < max_rounds; ++round) {
        IterateTrace trace = chebyshev_classical(a, v, params, {params.m - 1, params.m});
        DenseVector residual = matvec(a, trace.final_iterate);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = v[i] - residual[i];
        if (norm2(residual) <= 1e-12 * vnorm) return std::move(trace.final_iterate);
        // restart from the last two iterates; the recurrence is stationary
        params.z_minus1 = std::move(trace.snapshots[0].second);
        params.z0 = std::move(trace.snapshots[1].second);
    }
    throw ConvergenceError("reference solve stalled above the 1e-12 residual target", 0.0);
}

struct ResolvedScalars {
    double omega = 0.0, omega_hat = 0.0;
    double eta = 0.0, nu = 0.0, nu_hat = 0.0;
    double step_scalar = 0.0;  // omega or nu, for the omega_v start
};

ResolvedScalars resolve_scalars(const ExperimentConfig& c, const SpectralBounds& bounds,
                                double expected_rows, index_t n) {
    ResolvedScalars s;
    s.omega = omega_cr(bounds);
    const ChebyshevCoeffs coeffs = chebyshev_coeffs(c.alpha_factor * bounds.lambda_min,
                                                    c.beta_factor * bounds.lambda_max);
    s.eta = coeffs.eta;
    s.nu = coeffs.nu;
    const double correction =
        c.mode == Mode::straggler_corrected ? static_cast<double>(n) / expected_rows : 1.0;
    s.omega_hat = correction * s.omega;
    s.nu_hat = correction * s.nu;
    s.step_scalar = c.method == Method::richardson ? s.omega : s.nu;
    return s;
}

// trial runner: classical trials reuse the deterministic reference
std::vector<DenseVector> run_one_trial(const ExperimentConfig& c, const SparseMatrix& a,
                                       const DenseVector& v, const ResolvedScalars& s,
                                       const StraggleDistribution& dist,
                                       const DenseVector& z0, index_t trial,
                                       const std::vector<std::pair<index_t, DenseVector>>&
                                           classical_snapshots) {
    if (c.mode == Mode::classical) {
        std::vector<DenseVector> out;
        out.reserve(classical_snapshots.size());
        for (const auto& snap : classical_snapshots) out.push_back(snap.second);
        return out;
    }
    const SeedSpec seed{c.master_seed, static_cast<std::uint64_t>(trial), 0};
    IterateTrace trace;
    if (c.method == Method::richardson) {
        RichardsonParams params;
        params.omega = s.omega;
        params.omega_hat = s.omega_hat;
        params.m = c.m_values.back();
        params.z0 = z0;
        trace = richardson_straggler(a, v, params, dist, seed, c.m_values);
    } else {
        ChebyshevParams params;
        params.eta = s.eta;
        params.nu = s.nu;
        params.nu_hat = s.nu_hat;
        params.m = c.m_values.back();
        params.z0 = z0;
        trace = chebyshev_straggler(a, v, params, dist, seed, c.m_values);
    }
    std::vector<DenseVector> out;
    out.reserve(trace.snapshots.size());
    for (auto& snap : trace.snapshots) out.push_back(std::move(snap.second));
    return out;
}

// streaming per-entry mean and M2, reduced strictly in trial order
struct Welford {
    index_t count = 0;
    std::vector<DenseVector> mean;  // one vector per requested m
    std::vector<DenseVector> m2;

    Welford(std::size_t m_count, std::size_t n)
        : mean(m_count, DenseVector(n, 0.0)), m2(m_count, DenseVector(n, 0.0)) {}

    void add(const std::vector<DenseVector>& snapshots) {
        ++count;
        for (std::size_t mi = 0; mi < snapshots.size(); ++mi) {
            DenseVector& mu = mean[mi];
            DenseVector& acc = m2[mi];
            const DenseVector& x = snapshots[mi];
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double delta = x[j] - mu[j];
                mu[j] += delta / static_cast<double>(count);
                acc[j] += delta * (x[j] - mu[j]);
            }
        }
    }
};

} // namespace

ExperimentRecord run_trials(const ExperimentConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    validate_config(config);

    ExperimentRecord record;
    record.config = config;

    const SparseMatrix a = load_matrix(config);
    record.n = a.n;
    record.nnz = a.nnz();
    const DenseVector v = make_rhs(config, a);

    const double expected_rows_requested = config.tau * static_cast<double>(a.n);
    if (expected_rows_requested < 1.0)
        throw std::invalid_argument("tau * N must be at least 1");

    SpectralBounds bounds;
    if (config.bounds == BoundsMode::explicit_bounds) {
        bounds.lambda_min = config.lambda_min;
        bounds.lambda_max = config.lambda_max;
    } else {
        bounds = estimate_bounds(a, config.bounds_tol, config.bounds_max_iter,
                                 config.master_seed);
    }
    record.lambda_min = bounds.lambda_min;
    record.lambda_max = bounds.lambda_max;

    StraggleDistribution dist = StraggleDistribution::full(a.n);
    switch (config.dist_kind) {
        case DistKind::uniform_interval:
            dist = StraggleDistribution::uniform_interval(expected_rows_requested,
                                                          config.half_width, a.n);
            break;
        case DistKind::fixed:
            dist = StraggleDistribution::fixed(expected_rows_requested, a.n);
            break;
        case DistKind::full:
            break;
    }
    record.expected_t_value = expected_t(dist);

    const ResolvedScalars scalars =
        resolve_scalars(config, bounds, record.expected_t_value, a.n);
    record.omega = scalars.omega;
    record.omega_hat = scalars.omega_hat;
    record.eta = scalars.eta;
    record.nu = scalars.nu;
    record.nu_hat = scalars.nu_hat;

    const DenseVector z0 = make_initial(config, v, scalars.step_scalar);

    // deterministic reference run of the matching classical scheme
    IterateTrace classical;
    if (config.method == Method::richardson) {
        RichardsonParams params;
        params.omega = scalars.omega;
        params.m = config.m_values.back();
        params.z0 = z0;
        classical = richardson_classical(a, v, params, config.m_values);
    } else {
        ChebyshevParams params;
        params.eta = scalars.eta;
        params.nu = scalars.nu;
        params.m = config.m_values.back();
        params.z0 = z0;
        classical = chebyshev_classical(a, v, params, config.m_values);
    }
    record.reference_zm = classical.snapshots;
    record.reference_z = reference_solution(a, v, bounds, config);

    const std::size_t m_count = config.m_values.size();
    const index_t trials = config.trials;
    const std::vector<index_t> grid = prefix_grid(trials);

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const index_t threads = config.threads > 0 ? config.threads : static_cast<index_t>(hw);

    // chunk size balances join overhead against snapshot memory
    const double chunk_bytes = 64.0 * 1024 * 1024;
    const double per_trial =
        static_cast<double>(a.n) * static_cast<double>(m_count) * sizeof(double);
    index_t chunk = static_cast<index_t>(std::max(1.0, chunk_bytes / per_trial));
    chunk = std::clamp<index_t>(chunk, threads, 8192);
    chunk = std::min(chunk, trials);

    Welford stats(m_count, static_cast<std::size_t>(a.n));
    std::vector<std::vector<DenseVector>> slots(static_cast<std::size_t>(chunk));
    std::size_t grid_pos = 0;

    auto emit_rows = [&](index_t count) {
        for (std::size_t mi = 0; mi < m_count; ++mi) {
            TrialStatistics row;
            row.m = config.m_values[mi];
            row.trials = count;
            row.sample_mean = stats.mean[mi];
            if (count >= 2) {
                row.sample_variance.resize(static_cast<std::size_t>(a.n));
                double total = 0.0;
                for (std::size_t j = 0; j < row.sample_variance.size(); ++j) {
                    row.sample_variance[j] =
                        stats.m2[mi][j] / static_cast<double>(count - 1);
                    total += row.sample_variance[j];
                }
                row.avg_sample_variance = total / static_cast<double>(a.n);
            } else {
                row.avg_sample_variance = std::numeric_limits<double>::quiet_NaN();
            }
            row.mse_vs_zm = mse_diff(row.sample_mean, record.reference_zm[mi].second);
            row.mse_vs_z = mse_diff(row.sample_mean, record.reference_z);
            record.rows.push_back(std::move(row));
        }
    };

    index_t done = 0;
    while (done < trials) {
        const index_t batch = std::min(chunk, trials - done);
        if (config.mode == Mode::classical || batch == 1 || threads == 1) {
            for (index_t k = 0; k < batch; ++k)
                slots[static_cast<std::size_t>(k)] =
                    run_one_trial(config, a, v, scalars, dist, z0, done + k,
                                  record.reference_zm);
        } else {
            std::atomic<index_t> cursor{0};
            auto worker = [&]() {
                for (;;) {
                    const index_t k = cursor.fetch_add(1);
                    if (k >= batch) return;
                    slots[static_cast<std::size_t>(k)] =
                        run_one_trial(config, a, v, scalars, dist, z0, done + k,
                                      record.reference_zm);
                }
            };
            std::vector<std::thread> pool;
            const index_t spawn = std::min<index_t>(threads, batch);
            pool.reserve(static_cast<std::size_t>(spawn));
            for (index_t w = 0; w < spawn; ++w) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }
        for (index_t k = 0; k < batch; ++k) {
            stats.add(slots[static_cast<std::size_t>(k)]);
            while (grid_pos < grid.size() && grid[grid_pos] == stats.count) {
                emit_rows(stats.count);
                ++grid_pos;
            }
        }
        done += batch;
    }

    // rows come out prefix-major above; reorder m-major for the record
    std::stable_sort(record.rows.begin(), record.rows.end(),
                     [](const TrialStatistics& x, const TrialStatistics& y) {
                         if (x.m != y.m) return x.m < y.m;
                         return x.trials < y.trials;
                     });

    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return record;
}

ExperimentRecord variance_sweep(const ExperimentConfig& config,
                                const std::vector<index_t>& m_list, index_t trials) {
    if (trials < 2)
        throw std::invalid_argument("sample variance needs at least two trials");
    ExperimentConfig c = config;
    c.m_values = m_list;
    std::sort(c.m_values.begin(), c.m_values.end());
    c.m_values.erase(std::unique(c.m_values.begin(), c.m_values.end()), c.m_values.end());
    c.trials = trials;
    return run_trials(c);
}

void write_csv(const ExperimentRecord& record, std::ostream& out) {
    out << "method,mode,tau,m,L,mse_vs_zm,mse_vs_z,avg_sample_variance,seed\n";
    for (const TrialStatistics& row : record.rows) {
        out << to_string(record.config.method) << ',' << to_string(record.config.mode) << ','
            << fmt(record.config.tau) << ',' << row.m << ',' << row.trials << ','
            << fmt(row.mse_vs_zm) << ',' << fmt(row.mse_vs_z) << ','
            << fmt(row.avg_sample_variance) << ',' << record.config.master_seed << '\n';
    }
}

std::string to_csv(const ExperimentRecord& record) {
    std::ostringstream out;
    write_csv(record, out);
    return out.str();
}

std::string to_json(const ExperimentRecord& record, bool include_vectors, int indent) {
    using nlohmann::json;
    const ExperimentConfig& c = record.config;
    json cfg{
        {"matrix_path", c.matrix_path},
        {"laplacian_n", c.laplacian_n},
        {"method", to_string(c.method)},
        {"mode", to_string(c.mode)},
        {"tau", c.tau},
        {"dist_kind", to_string(c.dist_kind)},
        {"half_width", c.half_width},
        {"m_values", c.m_values},
        {"trials", c.trials},
        {"master_seed", c.master_seed},
        {"rhs", c.rhs == RhsKind::a_times_ones ? "a_times_ones" : c.rhs_path},
        {"initial", c.initial == InitialKind::zero
                        ? "zero"
                        : (c.initial == InitialKind::gaussian ? "gaussian" : "omega_v")},
        {"bounds", c.bounds == BoundsMode::estimate ? "estimate" : "explicit"},
        {"alpha_factor", c.alpha_factor},
        {"beta_factor", c.beta_factor},
        {"threads", c.threads},
    };
    json derived{
        {"n", record.n},
        {"nnz", record.nnz},
        {"lambda_min", record.lambda_min},
        {"lambda_max", record.lambda_max},
        {"expected_t", record.expected_t_value},
        {"omega", record.omega},
        {"omega_hat", record.omega_hat},
        {"eta", record.eta},
        {"nu", record.nu},
        {"nu_hat", record.nu_hat},
    };
    json rows = json::array();
    for (const TrialStatistics& row : record.rows) {
        json r{
            {"m", row.m},
            {"L", row.trials},
            {"mse_vs_zm", row.mse_vs_zm},
            {"mse_vs_z", row.mse_vs_z},
            {"avg_sample_variance", row.avg_sample_variance},
        };
        if (include_vectors) {
            r["sample_mean"] = row.sample_mean;
            r["sample_variance"] = row.sample_variance;
        }
        rows.push_back(std::move(r));
    }
    json doc{
        {"config", std::move(cfg)},
        {"derived", std::move(derived)},
        {"rows", std::move(rows)},
        {"wall_clock_seconds", record.wall_seconds},
    };
    return doc.dump(indent);
}

} // namespace stsolve
