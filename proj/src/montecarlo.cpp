#include "mrcwpt/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mrcwpt {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// canonical 53-bit uniform in [0, 1); distributions below are hand-rolled on
// top of it so that frozen-seed results do not depend on the stdlib's
// (implementation-defined) distribution algorithms
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// uniform in (0, rho]: pdf 2v/rho^2 (area-uniform disk radius), zero excluded
double disk_radius(double rho, std::mt19937_64& rng) {
    return rho * std::sqrt(1.0 - u01(rng));
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Poisson(mean): interarrival summation for small means, Hörmann's PTRS
// transformed rejection for large ones (exact, O(1), no underflow).
std::uint64_t poisson(double mean, std::mt19937_64& rng) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        std::uint64_t k = 0;
        double acc = -std::log1p(-u01(rng));
        while (acc <= mean) {
            ++k;
            acc += -std::log1p(-u01(rng));
        }
        return k;
    }
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double U = u01(rng) - 0.5;
        const double V = u01(rng);
        const double us = 0.5 - std::abs(U);
        const double kf = std::floor((2.0 * a / us + b) * U + mean + 0.43);
        if (us >= 0.07 && V <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && V > us)) continue;
        if (std::log(V * inv_alpha / (a / (us * us) + b)) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

constexpr double kTwoPi = 2.0 * M_PI;

// Runs per-block workers over a fixed block partition and returns the
// partials indexed by block; the caller reduces them in block order, which
// makes results independent of the thread count.
template <typename Partial, typename Fn>
std::vector<Partial> run_blocks(const SimConfig& sim, Fn&& per_block) {
    sim.validate();
    const std::uint64_t nblocks = (sim.trials + sim.block_size - 1) / sim.block_size;
    std::vector<Partial> partials(nblocks);
    unsigned nthreads =
        sim.threads ? sim.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(
        std::min<std::uint64_t>(nthreads, nblocks == 0 ? 1 : nblocks));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= nblocks) return;
            auto rng = block_rng(sim.seed, i);
            const std::uint64_t lo = i * sim.block_size;
            const std::uint64_t n = std::min<std::uint64_t>(sim.block_size, sim.trials - lo);
            partials[i] = per_block(rng, n);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return partials;
}

SimEstimate indicator_estimate(std::uint64_t count, std::uint64_t n) {
    SimEstimate est;
    est.trials = n;
    est.mean = static_cast<double>(count) / static_cast<double>(n);
    est.standard_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(n));
    return est;
}

}  // namespace

void SimConfig::validate() const {
    require(trials >= 1, "SimConfig: trials must be >= 1");
    require(block_size >= 1, "SimConfig: block_size must be >= 1");
}

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
    const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    const std::uint64_t s0 = mix64(seed + golden);
    const std::uint64_t s1 = mix64(s0 ^ ((block + 1) * golden));
    return std::mt19937_64(s1);
}

std::vector<ReceiverPlacement> sample_ppp(double density, double cell_radius, AngleMode mode,
                                          std::mt19937_64& rng, double coil_const) {
    require(density >= 0.0, "sample_ppp: density must be >= 0");
    require(cell_radius > 0.0, "sample_ppp: cell_radius must be positive");
    const std::uint64_t n = poisson(density * M_PI * cell_radius * cell_radius, rng);
    // one transmitter orientation per trial, shared by every receiver
    const double theta_t = mode == AngleMode::ExactRandom ? kTwoPi * u01(rng) : 0.0;
    std::vector<ReceiverPlacement> placed(n);
    for (auto& rx : placed) {
        rx.distance = disk_radius(cell_radius, rng);
        if (mode == AngleMode::ExactRandom) {
            rx.rx_angle = kTwoPi * u01(rng);
            rx.alignment = alignment_factor(theta_t, rx.rx_angle);
        } else {
            rx.rx_angle = 0.0;
            rx.alignment = 1.0;
        }
        rx.mutual_inductance =
            coil_const == 0.0 ? 0.0 : mutual_inductance(coil_const, rx.alignment, rx.distance);
    }
    return placed;
}

double interference_sum(std::span<const ReceiverPlacement> placed) {
    double s = 0.0;
    for (const auto& rx : placed) {
        const double d3 = rx.distance * rx.distance * rx.distance;
        s += rx.alignment * rx.alignment / (d3 * d3);
    }
    return s;
}

double sample_S(double density, double cell_radius, AngleMode mode, std::mt19937_64& rng) {
    require(density >= 0.0, "sample_S: density must be >= 0");
    require(cell_radius > 0.0, "sample_S: cell_radius must be positive");
    const std::uint64_t n = poisson(density * M_PI * cell_radius * cell_radius, rng);
    const double theta_t = mode == AngleMode::ExactRandom ? kTwoPi * u01(rng) : 0.0;
    double s = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double d = disk_radius(cell_radius, rng);
        const double align =
            mode == AngleMode::ExactRandom ? alignment_factor(theta_t, kTwoPi * u01(rng)) : 1.0;
        const double d3 = d * d * d;
        s += align * align / (d3 * d3);
    }
    return s;
}

CharFnEstimate empirical_char_fn(double t, double density, double cell_radius,
                                 const SimConfig& sim) {
    require(std::isfinite(t), "empirical_char_fn: t must be finite");
    struct Sums {
        double c = 0.0, s = 0.0, c2 = 0.0, s2 = 0.0;
    };
    auto partials = run_blocks<Sums>(sim, [&](std::mt19937_64& rng, std::uint64_t n) {
        Sums acc;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double S = sample_S(density, cell_radius, sim.angle_mode, rng);
            const double c = std::cos(t * S);
            const double s = std::sin(t * S);
            acc.c += c;
            acc.s += s;
            acc.c2 += c * c;
            acc.s2 += s * s;
        }
        return acc;
    });
    Sums total;
    for (const auto& b : partials) {
        total.c += b.c;
        total.s += b.s;
        total.c2 += b.c2;
        total.s2 += b.s2;
    }
    const double n = static_cast<double>(sim.trials);
    CharFnEstimate est;
    est.trials = sim.trials;
    est.mean = {total.c / n, total.s / n};
    const double var_c = std::max(0.0, (total.c2 - n * est.mean.real() * est.mean.real()) /
                                           std::max(1.0, n - 1.0));
    const double var_s = std::max(0.0, (total.s2 - n * est.mean.imag() * est.mean.imag()) /
                                           std::max(1.0, n - 1.0));
    est.se_real = std::sqrt(var_c / n);
    est.se_imag = std::sqrt(var_s / n);
    return est;
}

SimEstimate simulate_outage_strong(const SystemParams& p, const OutageQuery& q,
                                   const SimConfig& sim) {
    p.validate();
    q.validate(false);
    auto partials = run_blocks<std::uint64_t>(sim, [&](std::mt19937_64& rng, std::uint64_t n) {
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double S = sample_S(p.density, p.cell_radius, sim.angle_mode, rng);
            const double d0 = sim.typical_mode == TypicalMode::UniformDisk
                                  ? disk_radius(p.cell_radius, rng)
                                  : q.typical_distance;
            const double p0 = typical_power(p, q.typical_alignment, d0, q.common_load, S);
            if (p0 < q.threshold) ++count;
        }
        return count;
    });
    std::uint64_t total = 0;
    for (auto c : partials) total += c;
    return indicator_estimate(total, sim.trials);
}

SimEstimate simulate_outage_loose(const SystemParams& p, const OutageQuery& q,
                                  const SimConfig& sim) {
    p.validate();
    q.validate(false);
    auto partials = run_blocks<std::uint64_t>(sim, [&](std::mt19937_64& rng, std::uint64_t n) {
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double d0 = disk_radius(p.cell_radius, rng);
            const double m = mutual_inductance(p.coil_constant, q.typical_alignment, d0);
            const double p0 = harvested_power_loose(p, m, q.common_load);
            if (p0 < q.threshold) ++count;
        }
        return count;
    });
    std::uint64_t total = 0;
    for (auto c : partials) total += c;
    return indicator_estimate(total, sim.trials);
}

}  // namespace mrcwpt
