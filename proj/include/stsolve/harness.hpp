#ifndef STSOLVE_HARNESS_HPP
#define STSOLVE_HARNESS_HPP

#include "stsolve/solvers.hpp"
#include "stsolve/straggle.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace stsolve {

enum class Method { richardson, chebyshev };
enum class Mode { classical, straggler_corrected, straggler_uncorrected };
enum class RhsKind { a_times_ones, file };
enum class InitialKind { zero, gaussian, omega_v };
enum class BoundsMode { estimate, explicit_bounds };

std::string to_string(Method m);
std::string to_string(Mode m);

/// Full description of one Monte-Carlo experiment. Together with the
/// master seed it determines every number in the resulting record.
struct ExperimentConfig {
    // matrix source: exactly one of the two
    std::string matrix_path;
    index_t laplacian_n = 0;

    Method method = Method::richardson;
    Mode mode = Mode::classical;

    double tau = 1.0;  // E[T] = tau * N
    DistKind dist_kind = DistKind::uniform_interval;
    index_t half_width = 100;

    std::vector<index_t> m_values;
    index_t trials = 1;
    std::uint64_t master_seed = 0;

    RhsKind rhs = RhsKind::a_times_ones;
    std::string rhs_path;

    InitialKind initial = InitialKind::zero;  // omega_v: z0 = omega*v (nu*v for chebyshev)

    BoundsMode bounds = BoundsMode::estimate;
    double lambda_min = 0.0;  // explicit_bounds only
    double lambda_max = 0.0;
    double bounds_tol = 1e-8;
    index_t bounds_max_iter = 20000;

    double alpha_factor = 0.9;  // chebyshev enclosure safety factors
    double beta_factor = 1.1;

    int threads = 0;  // 0 = all hardware threads; never changes results
};

/// Per-(m, trial-prefix) statistics over the trial ensemble. Variance
/// uses the unbiased (L-1) normalization; for a single trial the
/// variance vector is empty and the average is NaN.
struct TrialStatistics {
    index_t m = 0;
    index_t trials = 0;
    DenseVector sample_mean;
    DenseVector sample_variance;
    double mse_vs_zm = 0.0;
    double mse_vs_z = 0.0;
    double avg_sample_variance = 0.0;
};

/// Everything an experiment produces: resolved scalars, references,
/// and one statistics row per (m, trial-prefix).
struct ExperimentRecord {
    ExperimentConfig config;
    index_t n = 0;
    index_t nnz = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double expected_t_value = 0.0;  // mean of the clamped distribution
    double omega = 0.0;
    double omega_hat = 0.0;
    double eta = 0.0;
    double nu = 0.0;
    double nu_hat = 0.0;
    std::vector<TrialStatistics> rows;  // m-major, then ascending prefix
    std::vector<std::pair<index_t, DenseVector>> reference_zm;
    DenseVector reference_z;
    double wall_seconds = 0.0;
};

/// MSE(x) = (1/N) * sum x_i^2. Throws on an empty vector.
double mse(const DenseVector& x);

/// Trial-prefix grid {1, 2, 5, 10, 20, 50, ...} up to and including L.
std::vector<index_t> prefix_grid(index_t trials);

/// Runs `trials` independent solver executions with per-trial seeds
/// derived from (master_seed, trial index), reduces statistics in trial
/// order (so results never depend on the thread count), and compares
/// against the classical iterate and a high-accuracy solution.
ExperimentRecord run_trials(const ExperimentConfig& config);

/// run_trials preset for variance-versus-m sweeps; rejects trials < 2
/// because sample variance would be undefined.
ExperimentRecord variance_sweep(const ExperimentConfig& config,
                                const std::vector<index_t>& m_list, index_t trials);

/// One CSV row per (m, prefix):
/// method,mode,tau,m,L,mse_vs_zm,mse_vs_z,avg_sample_variance,seed
void write_csv(const ExperimentRecord& record, std::ostream& out);
std::string to_csv(const ExperimentRecord& record);

/// JSON with the full config echo and derived scalars; vectors are
/// included only on request (they can be large).
std::string to_json(const ExperimentRecord& record, bool include_vectors = false,
                    int indent = 2);

} // namespace stsolve

#endif // STSOLVE_HARNESS_HPP
