#ifndef STSOLVE_SPECTRAL_HPP
#define STSOLVE_SPECTRAL_HPP

#include "stsolve/sparse_matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stsolve {

/// Enclosure of the spectrum of an SPD matrix.
struct SpectralBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_estimate)
        : std::runtime_error(what), last_estimate_(last_estimate) {}
    double last_estimate() const { return last_estimate_; }

private:
    double last_estimate_;
};

/// Power-iteration bounds for an SPD matrix: lambda_max directly on A,
/// lambda_min through the shifted operator sigma*I - A with
/// sigma = lambda_max*(1+tol). Start vectors derive from `seed`.
/// Throws std::invalid_argument when a symmetry spot check fails and
/// ConvergenceError (carrying the last estimate) past max_iter.
SpectralBounds estimate_bounds(const SparseMatrix& a, double tol = 1e-8,
                               index_t max_iter = 20000, std::uint64_t seed = 0);

} // namespace stsolve

#endif // STSOLVE_SPECTRAL_HPP
