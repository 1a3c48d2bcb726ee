#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrcwpt/game.hpp"
#include "mrcwpt/montecarlo.hpp"
#include "mrcwpt/stochastic.hpp"

namespace mrcwpt::experiments {

/// Transmit-power sweep in dBW (inclusive endpoints, evenly spaced points).
struct SweepSpec {
    double start_dbw = 0.0;
    double stop_dbw = 0.0;
    int points = 1;

    void validate() const;
    std::vector<double> values_dbw() const;
};

/// Everything an experiment run needs. `omega_set` tracks whether the
/// frequency came from the user; it has no physical default and runs refuse
/// to proceed without it (or without calibrate_from_anchor).
struct ExperimentConfig {
    SystemParams params;
    OutageQuery query;
    SimConfig sim;
    QuadratureConfig quad;
    SweepSpec sweep;
    std::vector<double> mutual_inductances;  // game scenario, henries
    bool omega_set = false;
    bool calibrate = false;          // derive omega from the anchor below
    double anchor_dbw = 24.5847;     // loose-regime zero-outage anchor
    double anchor_alignment = 0.5;   // I_0 the anchor refers to
    bool anchor_load_is_rx = true;   // anchor load x = rx_resistance
};

/// Key=value config-file parsing; unknown keys and malformed values are
/// rejected with the offending line. Returns the updated config.
ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& path);
ExperimentConfig apply_config_text(ExperimentConfig base, const std::string& text,
                                   const std::string& origin = "<config>");

/// Baseline cell parameters used by the bundled experiments (angular
/// frequency intentionally left unset).
ExperimentConfig default_config();

/// omega = sqrt(rho^6 tau R (r+x)^2 / (P_anchor e^2 I_0^2 x)): the frequency
/// that puts the loose-regime zero-outage power exactly at the anchor.
/// q supplies tau / I_0 / x; params supplies rho, R, r, e (omega ignored).
double calibrate_omega(double anchor_watts, const OutageQuery& q, const SystemParams& params);

/// Resolve the config's frequency: explicit omega, or calibration when
/// requested; throws if neither is available.
double resolve_omega(const ExperimentConfig& cfg);

double dbw_to_watts(double dbw);
double watts_to_dbw(double watts);

/// One sweep point of the strong-coupling outage experiment; the analytic
/// inversion sits beside Monte Carlo estimates in both angle modes.
struct Fig2Row {
    std::string label;
    double alignment = 0.0;
    double distance = 0.0;
    double power_dbw = 0.0;
    double power_watts = 0.0;
    double analytic = 0.0;
    double analytic_error = 0.0;
    int intervals = 0;
    bool feasible = true;
    std::string status;  // "ok" or a quadrature diagnostic
    double mc_exact = 0.0;
    double mc_exact_se = 0.0;
    double mc_unit = 0.0;
    double mc_unit_se = 0.0;
    std::uint64_t trials = 0;
};

/// One sweep point of the loose-coupling outage experiment.
struct Fig3Row {
    std::string label;
    double alignment = 0.0;
    double tx_resistance = 0.0;
    double load = 0.0;
    double power_dbw = 0.0;
    double power_watts = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double mc_se = 0.0;
    std::uint64_t trials = 0;
};

/// Harvested power of one receiver under one load policy.
struct Fig4Row {
    int receiver = 0;
    std::string policy;  // "equilibrium", "load=r", "load=max"
    double load = 0.0;
    double power_watts = 0.0;
};

/// Outage of the typical receiver vs transmit power, strong coupling, for the
/// four bundled (I_0, d_0) cases.
std::vector<Fig2Row> run_fig2(const ExperimentConfig& cfg);

/// Outage vs transmit power, loose coupling, for the six bundled
/// (I_0, R, x) configurations.
std::vector<Fig3Row> run_fig3(const ExperimentConfig& cfg);

/// Per-receiver harvested power under equilibrium loads, x = r, and x = x_u,
/// for the bundled four-receiver network.
struct Fig4Result {
    EquilibriumResult equilibrium;
    std::vector<Fig4Row> rows;
};
Fig4Result run_fig4(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash of the canonical config rendering; stamped into output
/// metadata so tables are traceable to their exact inputs.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string canonical_config(const ExperimentConfig& cfg);

enum class OutputFormat { Csv, JsonLines };

/// Table writers: a `#` metadata preamble (CSV) or a metadata object as the
/// first record (JSON lines), then one record per row. Output depends only on
/// the config, never on time or environment.
void write_fig2(std::ostream& os, const ExperimentConfig& cfg, const std::vector<Fig2Row>& rows,
                OutputFormat fmt);
void write_fig3(std::ostream& os, const ExperimentConfig& cfg, const std::vector<Fig3Row>& rows,
                OutputFormat fmt);
void write_fig4(std::ostream& os, const ExperimentConfig& cfg, const Fig4Result& result,
                OutputFormat fmt);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mrcwpt::experiments
