#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace catforge {

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free bounded maximization: Nelder-Mead with bound reflection,
/// multi-start from a low-discrepancy sequence, optional warm start.
/// Fully deterministic for a given (spec, seed).
struct OptimizeSpec {
    Objective objective;
    std::vector<Bounds> bounds;
    int restarts = 8;
    std::uint64_t seed = 0;
    double x_tol = 1e-9;
    double f_tol = 1e-12;
    int max_evals_per_restart = 6000;
    std::optional<std::vector<double>> warm_start;
};

struct OptimizeResult {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> trace;  // objective value of every evaluation, in order
    std::size_t evaluations = 0;
    bool converged = false;
    // Best point of each restart, in restart order. Flat objectives leave the
    // restarts scattered across the optimal set, which callers can exploit.
    std::vector<std::pair<std::vector<double>, double>> restart_results;
};

OptimizeResult maximize(const OptimizeSpec& spec);

/// Maximization subject to constraint(x) >= 0 via exterior quadratic penalty
/// (weight x10 per stage, 5 stages), followed by a bisection step toward the
/// best feasible iterate so the returned point satisfies g >= -1e-8.
/// Throws std::runtime_error if no feasible point is ever seen.
OptimizeResult maximize_constrained(const OptimizeSpec& spec, const Objective& constraint);

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

/// Coarse scan followed by golden-section refinement of a 1-D maximum.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol = 1e-10, int scan_points = 65);

}  // namespace catforge
