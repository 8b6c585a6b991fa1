#ifndef STSOLVE_VERIFY_HPP
#define STSOLVE_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stsolve {
namespace verify {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Enumeration average of the masked perturbation equals its closed
/// form on every (n, t) pair up to n = 6, for `reps` random matrices.
CheckResult check_perturbation_closed_form(int reps);

/// With the corrected weight (n/t)*omega, the mask-averaged iteration
/// matrix reproduces the deterministic one.
CheckResult check_corrected_step_unbiased(int reps);

/// Sequence-enumerated mean of the randomized first-order scheme equals
/// the classical iterate (corrected weight) and the expectation
/// recurrence, at small sizes.
CheckResult check_first_order_mean_exact();

/// Second-order analog on the (current, previous) pair.
CheckResult check_second_order_mean_exact();

/// Without the correction the mean iterate keeps a nonzero offset.
CheckResult check_uncorrected_bias_nonzero();

/// Closed-form mean matches the expectation recurrence started from
/// omega*v and approaches the true solution geometrically.
CheckResult check_closed_form_mean();

std::vector<CheckResult> run_all_checks();

/// Prints one line per check; returns true when everything passed.
bool run_verification_suite(std::ostream& out);

} // namespace verify
} // namespace stsolve

#endif // STSOLVE_VERIFY_HPP
