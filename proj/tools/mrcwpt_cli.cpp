/// Experiment runner for the resonant-coupling power-transfer library:
/// outage sweeps, a single-point analytic/Monte-Carlo pair, the load game,
/// and frequency calibration, emitted as CSV or JSON lines.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrcwpt/experiments.hpp"

namespace {

using namespace mrcwpt;
using namespace mrcwpt::experiments;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<double> omega;
    bool calibrate = false;
    std::optional<double> power_db;
    std::optional<double> power_watts;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_power = true) {
    cmd->add_option("--config", o.config_path, "key=value config file");
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    auto* om = cmd->add_option("--omega", o.omega, "angular frequency (rad/s)");
    auto* cal = cmd->add_flag("--calibrate-omega", o.calibrate,
                              "derive omega from the zero-outage power anchor");
    om->excludes(cal);
    cal->excludes(om);
    if (with_power) {
        auto* db = cmd->add_option("--power-db", o.power_db, "transmit power (dBW)");
        auto* w = cmd->add_option("--power-watts", o.power_watts, "transmit power (W)");
        db->excludes(w);
        w->excludes(db);
    }
    cmd->add_option("--format", o.format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
}

/// Materialize the run config: file overrides, then flags; omega resolved to
/// a concrete value so the emitted metadata pins the frequency actually used.
ExperimentConfig make_config(const CommonOpts& o, ExperimentConfig cfg = default_config()) {
    if (!o.config_path.empty()) cfg = apply_config_file(std::move(cfg), o.config_path);
    if (o.seed) cfg.sim.seed = *o.seed;
    if (o.trials) cfg.sim.trials = *o.trials;
    if (o.omega) {
        cfg.params.angular_frequency = *o.omega;
        cfg.omega_set = true;
        cfg.calibrate = false;
    } else if (o.calibrate) {
        cfg.calibrate = true;
    }
    if (o.power_db) cfg.params.transmit_power = dbw_to_watts(*o.power_db);
    if (o.power_watts) cfg.params.transmit_power = *o.power_watts;
    cfg.params.angular_frequency = resolve_omega(cfg);
    cfg.omega_set = true;
    return cfg;
}

OutputFormat parse_format(const std::string& f) {
    return f == "json-lines" ? OutputFormat::JsonLines : OutputFormat::Csv;
}

/// Stream sink honoring --out; stdout when no path given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string hex_hash(const ExperimentConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

void emit_scalar_report(std::ostream& os, const ExperimentConfig& cfg, const char* experiment,
                        const std::vector<std::pair<std::string, std::string>>& fields,
                        OutputFormat fmt) {
    if (fmt == OutputFormat::Csv) {
        os << "# tool=mrcwpt " << kToolVersion << "\n"
           << "# experiment=" << experiment << "\n"
           << "# config_hash=" << hex_hash(cfg) << "\n"
           << "# seed=" << cfg.sim.seed << "\n"
           << "# trials=" << cfg.sim.trials << "\n";
        if (cfg.omega_set) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", cfg.params.angular_frequency);
            os << "# omega_rad_per_s=" << buf << "\n";
        }
        for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].first;
        os << '\n';
        for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].second;
        os << '\n';
        return;
    }
    nlohmann::json meta{{"record", "metadata"},
                        {"tool", std::string("mrcwpt ") + kToolVersion},
                        {"experiment", experiment},
                        {"config_hash", hex_hash(cfg)},
                        {"seed", cfg.sim.seed},
                        {"trials", cfg.sim.trials}};
    if (cfg.omega_set) meta["omega_rad_per_s"] = cfg.params.angular_frequency;
    os << meta.dump() << '\n';
    nlohmann::json row{{"record", "row"}};
    for (const auto& [k, v] : fields) row[k] = v;
    os << row.dump() << '\n';
}

std::string num(double v, const char* spec = "%.9g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

int cmd_fig2(const CommonOpts& o) {
    const ExperimentConfig cfg = make_config(o);
    const auto rows = run_fig2(cfg);
    Sink sink(o.out_path);
    write_fig2(sink.os(), cfg, rows, parse_format(o.format));
    return 0;
}

int cmd_fig3(const CommonOpts& o) {
    ExperimentConfig base = default_config();
    base.sweep = {0.0, 27.0, 10};  // brackets the visible loose-regime transitions
    const ExperimentConfig cfg = make_config(o, std::move(base));
    const auto rows = run_fig3(cfg);
    Sink sink(o.out_path);
    write_fig3(sink.os(), cfg, rows, parse_format(o.format));
    return 0;
}

int cmd_fig4(const CommonOpts& o) {
    const ExperimentConfig cfg = make_config(o);
    const Fig4Result result = run_fig4(cfg);
    Sink sink(o.out_path);
    write_fig4(sink.os(), cfg, result, parse_format(o.format));
    return 0;
}

int cmd_outage(const CommonOpts& o, bool loose) {
    const ExperimentConfig cfg = make_config(o);
    std::vector<std::pair<std::string, std::string>> fields;
    if (loose) {
        const double prob = outage_loose(cfg.params, cfg.query);
        fields = {{"model", "loose"},
                  {"power_w", num(cfg.params.transmit_power)},
                  {"probability", num(prob, "%.12g")}};
    } else {
        const OutageResult res = outage_strong(cfg.params, cfg.query, cfg.quad);
        fields = {{"model", "strong"},
                  {"power_w", num(cfg.params.transmit_power)},
                  {"probability", num(res.probability, "%.12g")},
                  {"est_error", num(res.est_error, "%.3g")},
                  {"intervals", std::to_string(res.intervals_used)},
                  {"feasible", res.feasible ? "1" : "0"}};
    }
    Sink sink(o.out_path);
    emit_scalar_report(sink.os(), cfg, "outage", fields, parse_format(o.format));
    return 0;
}

int cmd_simulate(const CommonOpts& o, bool loose) {
    const ExperimentConfig cfg = make_config(o);
    SimEstimate est = loose ? simulate_outage_loose(cfg.params, cfg.query, cfg.sim)
                            : simulate_outage_strong(cfg.params, cfg.query, cfg.sim);
    const std::vector<std::pair<std::string, std::string>> fields = {
        {"model", loose ? "loose" : "strong"},
        {"power_w", num(cfg.params.transmit_power)},
        {"estimate", num(est.mean, "%.12g")},
        {"standard_error", num(est.standard_error, "%.6g")},
        {"trials", std::to_string(est.trials)}};
    Sink sink(o.out_path);
    emit_scalar_report(sink.os(), cfg, "simulate", fields, parse_format(o.format));
    return 0;
}

int cmd_equilibrium(const CommonOpts& o) {
    const ExperimentConfig cfg = make_config(o);
    GameSpec game;
    game.mutual_inductances = cfg.mutual_inductances;
    game.params = cfg.params;
    const EquilibriumResult eq = solve_equilibrium(game);
    Sink sink(o.out_path);
    std::ostream& os = sink.os();
    const OutputFormat fmt = parse_format(o.format);
    if (fmt == OutputFormat::Csv) {
        os << "# tool=mrcwpt " << kToolVersion << "\n"
           << "# experiment=equilibrium\n"
           << "# config_hash=" << hex_hash(cfg) << "\n"
           << "# sweeps=" << eq.sweeps << "\n";
        os << "receiver,load_ohm,utility_w,residual\n";
        for (std::size_t i = 0; i < eq.loads.size(); ++i)
            os << (i + 1) << ',' << num(eq.loads[i], "%.12g") << ','
               << num(eq.utilities[i], "%.12g") << ',' << num(eq.residuals[i], "%.3g") << '\n';
        return 0;
    }
    nlohmann::json meta{{"record", "metadata"},
                        {"tool", std::string("mrcwpt ") + kToolVersion},
                        {"experiment", "equilibrium"},
                        {"config_hash", hex_hash(cfg)},
                        {"sweeps", eq.sweeps}};
    os << meta.dump() << '\n';
    for (std::size_t i = 0; i < eq.loads.size(); ++i) {
        nlohmann::json j{{"record", "row"},
                         {"receiver", i + 1},
                         {"load_ohm", eq.loads[i]},
                         {"utility_w", eq.utilities[i]},
                         {"residual", eq.residuals[i]}};
        os << j.dump() << '\n';
    }
    return 0;
}

int cmd_calibrate(const CommonOpts& o, double anchor_dbw_flag, bool anchor_given) {
    ExperimentConfig cfg = default_config();
    if (!o.config_path.empty()) cfg = apply_config_file(std::move(cfg), o.config_path);
    if (anchor_given) cfg.anchor_dbw = anchor_dbw_flag;
    cfg.calibrate = true;
    cfg.omega_set = false;
    const double omega = resolve_omega(cfg);
    cfg.params.angular_frequency = omega;
    cfg.omega_set = true;
    const std::vector<std::pair<std::string, std::string>> fields = {
        {"anchor_dbw", num(cfg.anchor_dbw, "%.12g")},
        {"anchor_w", num(dbw_to_watts(cfg.anchor_dbw), "%.12g")},
        {"omega_rad_per_s", num(omega, "%.17g")}};
    Sink sink(o.out_path);
    emit_scalar_report(sink.os(), cfg, "calibrate-omega", fields, parse_format(o.format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mrcwpt: outage and load-game experiments for a resonant-coupling WPT cell"};
    app.require_subcommand(1);

    CommonOpts fig2_o, fig3_o, fig4_o, outage_o, sim_o, eq_o, cal_o;
    bool outage_loose_flag = false, sim_loose_flag = false;
    double anchor_dbw = 24.5847;

    auto* fig2 = app.add_subcommand("fig2", "strong-coupling outage vs transmit power");
    add_common(fig2, fig2_o, false);
    auto* fig3 = app.add_subcommand("fig3", "loose-coupling outage vs transmit power");
    add_common(fig3, fig3_o, false);
    auto* fig4 = app.add_subcommand("fig4", "per-receiver power under three load policies");
    add_common(fig4, fig4_o);
    auto* outage = app.add_subcommand("outage", "analytic outage at one operating point");
    add_common(outage, outage_o);
    outage->add_flag("--loose", outage_loose_flag, "use the loose-coupling model");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage at one operating point");
    add_common(simulate, sim_o);
    simulate->add_flag("--loose", sim_loose_flag, "use the loose-coupling model");
    auto* equilibrium = app.add_subcommand("equilibrium", "solve the load-adjustment game");
    add_common(equilibrium, eq_o);
    auto* calibrate = app.add_subcommand("calibrate-omega",
                                         "derive omega from the zero-outage power anchor");
    calibrate->add_option("--config", cal_o.config_path, "key=value config file");
    calibrate->add_option("--out", cal_o.out_path, "output path (default: stdout)");
    calibrate->add_option("--format", cal_o.format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    auto* anchor_opt =
        calibrate->add_option("--anchor-db", anchor_dbw, "zero-outage power anchor (dBW)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig2->parsed()) return cmd_fig2(fig2_o);
        if (fig3->parsed()) return cmd_fig3(fig3_o);
        if (fig4->parsed()) return cmd_fig4(fig4_o);
        if (outage->parsed()) return cmd_outage(outage_o, outage_loose_flag);
        if (simulate->parsed()) return cmd_simulate(sim_o, sim_loose_flag);
        if (equilibrium->parsed()) return cmd_equilibrium(eq_o);
        if (calibrate->parsed()) return cmd_calibrate(cal_o, anchor_dbw, anchor_opt->count() > 0);
    } catch (const mrcwpt::QuadratureError& e) {
        std::cerr << "error: quadrature failure: " << e.what() << '\n';
        return 2;
    } catch (const mrcwpt::EquilibriumError& e) {
        std::cerr << "error: equilibrium failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
