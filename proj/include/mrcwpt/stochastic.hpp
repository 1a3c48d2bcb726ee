#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "mrcwpt/circuit.hpp"

namespace mrcwpt {

/// Description of the typical receiver whose outage is being evaluated.
struct OutageQuery {
    double threshold = 0.1;          // tau, W
    double typical_alignment = 1.0;  // I_0
    double typical_distance = 1.5;   // d_0, m (ignored by the loose regime, which
                                     // averages over a uniform position in the disk)
    double common_load = 2.0;        // x, ohm (every receiver incl. the typical one)

    /// strict_threshold rejects tau <= 0 (the analytic formulas divide by tau);
    /// simulation entry points pass false and accept tau = 0.
    void validate(bool strict_threshold = true) const;
};

/// Which evaluation of the radial Fourier kernel backs the characteristic
/// function: the closed incomplete-gamma form, or direct oscillatory
/// quadrature over half-period panels (slower; kept as a cross-check).
enum class InnerMethod { IncompleteGamma, ZeroPartition };

/// Tolerances and limits for the distribution-inversion integral.
struct QuadratureConfig {
    double outer_abs_tol = 1e-4;     // stop when the accelerated tail estimate is below this
    double inner_rel_tol = 1e-8;     // ZeroPartition series/panel tolerance
    int max_intervals = 400;         // half-period intervals of the outer integral
    int min_intervals = 8;           // always sum at least this many before testing convergence
    InnerMethod inner_method = InnerMethod::IncompleteGamma;
    bool accelerate = true;          // epsilon-accelerate the partial sums

    void validate() const;
};

/// Outcome of the outage inversion with convergence diagnostics.
struct OutageResult {
    double probability = 0.0;
    double est_error = 0.0;      // accelerator delta + quadrature error estimate
    bool feasible = true;        // false when the deterministic threshold is unreachable
    int intervals_used = 0;
    bool clamped = false;        // probability was nudged back into [0, 1]
};

/// Raised when the inversion integral fails to converge within budget.
/// `partial` carries the best estimate reached.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, OutageResult p)
        : std::runtime_error(msg), partial(p) {}
    OutageResult partial;
};

/// Characteristic function of the interference sum S = sum_i I_i^2 / d_i^6
/// with unit alignments over a PPP of the given density in a disk of radius
/// `cell_radius`:  phi_S(t) = exp(2 pi density (G(t) - rho^2/2)),
/// G(t) = int_0^rho exp(j t v^-6) v dv.  Any real t; phi(-t) = conj(phi(t)).
std::complex<double> characteristic_fn_S(double t, double density, double cell_radius,
                                         const QuadratureConfig& cfg = {});

/// CDF of the typical-receiver distance: (x/rho)^2 on [0, rho].
double distance_cdf(double x, double cell_radius);

/// Which quadrature rule evaluates expected_abs_alignment.
enum class AlignmentRule { AdaptiveKronrod, GaussLegendre };

/// E|I| over independent uniform angles:
///   (4/pi^2) int_0^{pi/2} sqrt(1 + 3 sin^2 t) dt.
double expected_abs_alignment(AlignmentRule rule = AlignmentRule::AdaptiveKronrod);

/// Interference headroom Lambda implied by "harvested power >= tau":
///   Lambda = (I_0^2/d_0^6) [ (P x (r+x)^{-1} - tau) / tau ] - R (r+x) / (w^2 e^2).
/// p_0 >= tau  iff  S <= Lambda. Negative Lambda means outage is certain.
double lambda_threshold(const SystemParams& p, const OutageQuery& q);

/// Harvesting-outage probability in the strongly coupled regime,
/// P[S > Lambda], via characteristic-function inversion.
OutageResult outage_strong(const SystemParams& p, const OutageQuery& q,
                           const QuadratureConfig& cfg = {});

/// Loose-regime outage over a uniformly positioned typical receiver:
///   P_o = max(0, 1 - (P / P_min)^{1/3}).
double outage_loose(const SystemParams& p, const OutageQuery& q);

/// Smallest transmit power with zero loose-regime outage:
///   P_min = rho^6 tau R (r+x)^2 / (w^2 e^2 I_0^2 x).
double min_power_zero_outage(const SystemParams& p, const OutageQuery& q);

}  // namespace mrcwpt
