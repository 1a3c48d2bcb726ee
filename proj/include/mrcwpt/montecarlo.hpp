#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mrcwpt/circuit.hpp"
#include "mrcwpt/stochastic.hpp"

namespace mrcwpt {

/// How receiver/transmitter orientations are drawn.
///   ExactRandom   -- independent uniform angles, transmitter angle shared per trial
///   UnitAlignment -- all alignment factors pinned to 1 (the analytic model)
enum class AngleMode { ExactRandom, UnitAlignment };

/// Whether the typical receiver sits at a fixed distance or is placed
/// uniformly in the disk (loose-regime averaging).
enum class TypicalMode { FixedTypical, UniformDisk };

/// Simulation controls. Estimates are deterministic functions of (trials,
/// seed, block_size) and independent of `threads`: trials are partitioned
/// into fixed blocks, each block runs its own generator seeded from
/// (seed, block index), and block results are reduced in block order.
struct SimConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    AngleMode angle_mode = AngleMode::ExactRandom;
    TypicalMode typical_mode = TypicalMode::FixedTypical;
    std::uint32_t block_size = 8192;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

/// Mean estimate with its standard error sqrt(p(1-p)/n) for indicators,
/// sample-variance based otherwise.
struct SimEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Empirical characteristic-function estimate (componentwise standard errors).
struct CharFnEstimate {
    std::complex<double> mean{0.0, 0.0};
    double se_real = 0.0;
    double se_imag = 0.0;
    std::uint64_t trials = 0;
};

/// Deterministic per-block generator: mt19937_64 seeded with a splitmix-style
/// mix of (seed, block).
std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block);

/// Draw one Poisson(density * pi * rho^2) population of interferers
/// (distances with pdf 2v/rho^2). In ExactRandom mode a single transmitter
/// angle is drawn first and shared by all receivers of this trial. The
/// mutual_inductance fields are filled from coil_const (0 leaves them 0).
std::vector<ReceiverPlacement> sample_ppp(double density, double cell_radius, AngleMode mode,
                                          std::mt19937_64& rng, double coil_const = 0.0);

/// S = sum_i I_i^2 / d_i^6 over a placed population.
double interference_sum(std::span<const ReceiverPlacement> placed);

/// Draw one realization of S directly.
double sample_S(double density, double cell_radius, AngleMode mode, std::mt19937_64& rng);

/// Empirical mean of exp(j t S) over `sim.trials` draws of S.
CharFnEstimate empirical_char_fn(double t, double density, double cell_radius,
                                 const SimConfig& sim);

/// Outage frequency in the strongly coupled regime: fraction of trials where
/// the typical receiver, facing a fresh PPP of interferers (all at load
/// q.common_load), harvests less than q.threshold.
SimEstimate simulate_outage_strong(const SystemParams& p, const OutageQuery& q,
                                   const SimConfig& sim);

/// Outage frequency in the loose regime: the typical receiver is placed
/// uniformly in the disk (q.typical_distance ignored); no interference enters.
SimEstimate simulate_outage_loose(const SystemParams& p, const OutageQuery& q,
                                  const SimConfig& sim);

}  // namespace mrcwpt
