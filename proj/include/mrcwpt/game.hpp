#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrcwpt/circuit.hpp"

namespace mrcwpt {

/// Whether equilibrium iteration updates loads in place (Gauss-Seidel) or
/// from the previous sweep's profile (Jacobi).
enum class UpdateOrder { Sequential, Simultaneous };

/// The load-adjustment game: K receivers with fixed mutual inductances pick
/// loads in [params.load_min, params.load_max] to maximize their own
/// harvested power. The transmit power scales every utility alike, so the
/// equilibrium does not depend on it.
struct GameSpec {
    std::vector<double> mutual_inductances;  // H, signed, one per receiver
    SystemParams params;
    double tolerance = 1e-8;  // max |load change| per sweep, ohm
    int max_sweeps = 1000;
    UpdateOrder order = UpdateOrder::Sequential;

    void validate() const;
};

/// Receiver i's environment: its power is f(x) = alpha x / ((r+x) (beta + gamma (r+x)))
/// with alpha = P w^2 M_i^2, beta = w^2 M_i^2,
/// gamma = R + w^2 sum_{k != i} M_k^2 / (r + x_k).
struct InteractionTerms {
    double beta = 0.0;
    double gamma = 0.0;
};

/// Fixed point of the best-response map with diagnostics.
struct EquilibriumResult {
    std::vector<double> loads;      // ohm
    std::vector<double> utilities;  // harvested power at the fixed point, W
    int sweeps = 0;
    bool converged = false;
    std::vector<double> residuals;  // |x_i - best_response_i| at exit
};

/// Raised when best-response iteration fails to converge; carries the last
/// iterate and residuals.
struct EquilibriumError : std::runtime_error {
    EquilibriumError(const std::string& msg, EquilibriumResult p)
        : std::runtime_error(msg), partial(std::move(p)) {}
    EquilibriumResult partial;
};

/// Outcome of the standard-function spot checks of one player's utility:
/// positivity, increase-then-decrease around the closed-form maximizer, the
/// scaling inequality c*f(x) > f(c*x) for c > 1, and agreement of the
/// analytic derivative's sign change with the maximizer.
struct StandardFunctionReport {
    bool positive = false;
    bool unimodal = false;
    bool scalable = false;
    bool derivative_consistent = false;
    std::vector<std::string> violations;  // property name + witness point

    bool all_hold() const { return positive && unimodal && scalable && derivative_consistent; }
};

InteractionTerms interaction_terms(const GameSpec& g, std::size_t i,
                                   std::span<const double> loads);

/// Utility of player i at the load profile (evaluated through the one exact
/// power formula, harvested_power).
double utility(const GameSpec& g, std::size_t i, std::span<const double> loads);

/// Analytic d/dx_i of utility, alpha (beta r + gamma r^2 - gamma x^2) /
/// ((r+x)^2 (beta + gamma r + gamma x)^2).
double utility_derivative(const GameSpec& g, std::size_t i, std::span<const double> loads);

/// Unconstrained maximizer xi = sqrt(r (r + beta/gamma)) clamped to
/// [load_min, load_max].
double best_response(const GameSpec& g, std::size_t i, std::span<const double> loads);

/// Iterate best responses from `initial` (empty means all load_min) until the
/// largest per-player load change in a sweep falls below g.tolerance.
/// Throws EquilibriumError if max_sweeps is exhausted.
EquilibriumResult solve_equilibrium(const GameSpec& g, std::vector<double> initial = {});

/// Evaluate the standard-function properties of player i's utility over a
/// probe grid of own-loads (all > 0), using `scale_factors` (> 1, default
/// {1.5, 2, 5}) for the scaling inequality.
StandardFunctionReport verify_standard_function(const GameSpec& g, std::size_t i,
                                                std::span<const double> loads,
                                                std::span<const double> probe_grid,
                                                std::span<const double> scale_factors = {});

/// Per-receiver power in a symmetric network of K identical receivers with
/// R = r = epsilon, evaluated through harvested_power; tends to P/K as
/// epsilon tends to 0 and to 0 as K grows.
double symmetric_limit_power(int receivers, double transmit_power, double epsilon);

}  // namespace mrcwpt
