#include "mrcwpt/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mrcwpt::experiments {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::string fmt(double v, const char* spec = "%.9g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_full(double v) { return fmt(v, "%.17g"); }

}  // namespace

void SweepSpec::validate() const {
    require(points >= 1, "SweepSpec: points must be >= 1");
    require(points == 1 || stop_dbw >= start_dbw,
            "SweepSpec: stop must be >= start for multi-point sweeps");
}

std::vector<double> SweepSpec::values_dbw() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(points));
    if (points == 1) {
        v[0] = start_dbw;
        return v;
    }
    const double step = (stop_dbw - start_dbw) / (points - 1);
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = start_dbw + step * i;
    return v;
}

double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

double watts_to_dbw(double watts) {
    require(watts > 0.0, "watts_to_dbw: power must be positive");
    return 10.0 * std::log10(watts);
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.params.transmit_power = 10.0;  // 10 dBW, the bundled game scenario's power
    cfg.params.tx_resistance = 1.3440;
    cfg.params.rx_resistance = 0.0672;
    cfg.params.coil_constant = coil_constant(CoilGeometry{});
    cfg.params.cell_radius = 5.0;
    cfg.params.density = 0.1;
    cfg.params.power_threshold = 0.1;
    cfg.params.load_min = 0.01;
    cfg.params.load_max = 5.0;
    cfg.query.threshold = 0.1;
    cfg.query.typical_alignment = 1.0;
    cfg.query.typical_distance = 1.5;
    cfg.query.common_load = 2.0;
    cfg.sweep = {-10.0, 35.0, 10};
    cfg.mutual_inductances = {-0.0921e-6, 0.0402e-6, 0.0370e-6, 0.0245e-6};
    return cfg;
}

double calibrate_omega(double anchor_watts, const OutageQuery& q, const SystemParams& params) {
    require(anchor_watts > 0.0, "calibrate_omega: anchor power must be positive (watts)");
    q.validate(true);
    require(params.coil_constant > 0.0, "calibrate_omega: coil_constant must be set (> 0)");
    require(params.tx_resistance > 0.0 && params.rx_resistance > 0.0 &&
                params.cell_radius > 0.0,
            "calibrate_omega: resistances and cell radius must be positive");
    require(q.typical_alignment != 0.0, "calibrate_omega: anchor alignment must be nonzero");
    const double rx = params.rx_resistance + q.common_load;
    const double num = std::pow(params.cell_radius, 6.0) * q.threshold * params.tx_resistance *
                       rx * rx;
    const double den = anchor_watts * params.coil_constant * params.coil_constant *
                       q.typical_alignment * q.typical_alignment * q.common_load;
    require(den > 0.0 && num > 0.0, "calibrate_omega: non-positive intermediate");
    return std::sqrt(num / den);
}

double resolve_omega(const ExperimentConfig& cfg) {
    if (cfg.omega_set) {
        require(cfg.params.angular_frequency > 0.0, "omega must be positive");
        return cfg.params.angular_frequency;
    }
    if (cfg.calibrate) {
        OutageQuery anchor = cfg.query;
        anchor.typical_alignment = cfg.anchor_alignment;
        if (cfg.anchor_load_is_rx) anchor.common_load = cfg.params.rx_resistance;
        return calibrate_omega(dbw_to_watts(cfg.anchor_dbw), anchor, cfg.params);
    }
    throw std::runtime_error(
        "angular frequency not set: pass --omega/omega_rad_per_s or enable --calibrate-omega");
}

namespace {

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value '" + s + "' at " + where);
    }
}

std::uint64_t parse_u64(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer value '" + s + "' at " + where);
    }
}

bool parse_bool(const std::string& s, const std::string& where) {
    if (s == "1" || s == "true" || s == "on") return true;
    if (s == "0" || s == "false" || s == "off") return false;
    throw std::runtime_error("config: bad boolean value '" + s + "' at " + where);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string& s, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), where));
    require(!out.empty(), "config: empty list at " + where);
    return out;
}

}  // namespace

ExperimentConfig apply_config_text(ExperimentConfig base, const std::string& text,
                                   const std::string& origin) {
    struct GeometryOverride {
        CoilGeometry geom;
        bool any = false;
    } g;
    bool coil_constant_set = false;

    std::map<std::string, std::function<void(const std::string&, const std::string&)>> table;
    auto& cfg = base;
    table["tx_turns"] = [&](const std::string& v, const std::string& w) {
        g.geom.tx_turns = static_cast<int>(parse_u64(v, w));
        g.any = true;
    };
    table["tx_radius_m"] = [&](const std::string& v, const std::string& w) {
        g.geom.tx_radius = parse_double(v, w);
        g.any = true;
    };
    table["rx_turns"] = [&](const std::string& v, const std::string& w) {
        g.geom.rx_turns = static_cast<int>(parse_u64(v, w));
        g.any = true;
    };
    table["rx_radius_m"] = [&](const std::string& v, const std::string& w) {
        g.geom.rx_radius = parse_double(v, w);
        g.any = true;
    };
    table["permeability_h_per_m"] = [&](const std::string& v, const std::string& w) {
        g.geom.permeability = parse_double(v, w);
        g.any = true;
    };
    table["coil_constant_hm3"] = [&](const std::string& v, const std::string& w) {
        cfg.params.coil_constant = parse_double(v, w);
        coil_constant_set = true;
    };
    table["transmit_power_w"] = [&](const std::string& v, const std::string& w) {
        cfg.params.transmit_power = parse_double(v, w);
    };
    table["omega_rad_per_s"] = [&](const std::string& v, const std::string& w) {
        cfg.params.angular_frequency = parse_double(v, w);
        cfg.omega_set = true;
    };
    table["calibrate_omega"] = [&](const std::string& v, const std::string& w) {
        cfg.calibrate = parse_bool(v, w);
    };
    table["anchor_dbw"] = [&](const std::string& v, const std::string& w) {
        cfg.anchor_dbw = parse_double(v, w);
    };
    table["anchor_alignment"] = [&](const std::string& v, const std::string& w) {
        cfg.anchor_alignment = parse_double(v, w);
    };
    table["tx_resistance_ohm"] = [&](const std::string& v, const std::string& w) {
        cfg.params.tx_resistance = parse_double(v, w);
    };
    table["rx_resistance_ohm"] = [&](const std::string& v, const std::string& w) {
        cfg.params.rx_resistance = parse_double(v, w);
    };
    table["cell_radius_m"] = [&](const std::string& v, const std::string& w) {
        cfg.params.cell_radius = parse_double(v, w);
    };
    table["density_per_m2"] = [&](const std::string& v, const std::string& w) {
        cfg.params.density = parse_double(v, w);
    };
    table["power_threshold_w"] = [&](const std::string& v, const std::string& w) {
        cfg.params.power_threshold = parse_double(v, w);
        cfg.query.threshold = cfg.params.power_threshold;
    };
    table["load_min_ohm"] = [&](const std::string& v, const std::string& w) {
        cfg.params.load_min = parse_double(v, w);
    };
    table["load_max_ohm"] = [&](const std::string& v, const std::string& w) {
        cfg.params.load_max = parse_double(v, w);
    };
    table["typical_alignment"] = [&](const std::string& v, const std::string& w) {
        cfg.query.typical_alignment = parse_double(v, w);
    };
    table["typical_distance_m"] = [&](const std::string& v, const std::string& w) {
        cfg.query.typical_distance = parse_double(v, w);
    };
    table["common_load_ohm"] = [&](const std::string& v, const std::string& w) {
        cfg.query.common_load = parse_double(v, w);
    };
    table["mutual_inductances_h"] = [&](const std::string& v, const std::string& w) {
        cfg.mutual_inductances = parse_double_list(v, w);
    };
    table["trials"] = [&](const std::string& v, const std::string& w) {
        cfg.sim.trials = parse_u64(v, w);
    };
    table["seed"] = [&](const std::string& v, const std::string& w) {
        cfg.sim.seed = parse_u64(v, w);
    };
    table["block_size"] = [&](const std::string& v, const std::string& w) {
        cfg.sim.block_size = static_cast<std::uint32_t>(parse_u64(v, w));
    };
    table["threads"] = [&](const std::string& v, const std::string& w) {
        cfg.sim.threads = static_cast<unsigned>(parse_u64(v, w));
    };
    table["angle_mode"] = [&](const std::string& v, const std::string& w) {
        if (v == "exact")
            cfg.sim.angle_mode = AngleMode::ExactRandom;
        else if (v == "unit")
            cfg.sim.angle_mode = AngleMode::UnitAlignment;
        else
            throw std::runtime_error("config: angle_mode must be 'exact' or 'unit' at " + w);
    };
    table["typical_mode"] = [&](const std::string& v, const std::string& w) {
        if (v == "fixed")
            cfg.sim.typical_mode = TypicalMode::FixedTypical;
        else if (v == "uniform")
            cfg.sim.typical_mode = TypicalMode::UniformDisk;
        else
            throw std::runtime_error("config: typical_mode must be 'fixed' or 'uniform' at " + w);
    };
    table["outer_abs_tol"] = [&](const std::string& v, const std::string& w) {
        cfg.quad.outer_abs_tol = parse_double(v, w);
    };
    table["inner_rel_tol"] = [&](const std::string& v, const std::string& w) {
        cfg.quad.inner_rel_tol = parse_double(v, w);
    };
    table["max_intervals"] = [&](const std::string& v, const std::string& w) {
        cfg.quad.max_intervals = static_cast<int>(parse_u64(v, w));
    };
    table["min_intervals"] = [&](const std::string& v, const std::string& w) {
        cfg.quad.min_intervals = static_cast<int>(parse_u64(v, w));
    };
    table["inner_method"] = [&](const std::string& v, const std::string& w) {
        if (v == "gamma")
            cfg.quad.inner_method = InnerMethod::IncompleteGamma;
        else if (v == "partition")
            cfg.quad.inner_method = InnerMethod::ZeroPartition;
        else
            throw std::runtime_error("config: inner_method must be 'gamma' or 'partition' at " +
                                     w);
    };
    table["accelerate"] = [&](const std::string& v, const std::string& w) {
        cfg.quad.accelerate = parse_bool(v, w);
    };
    table["sweep_start_dbw"] = [&](const std::string& v, const std::string& w) {
        cfg.sweep.start_dbw = parse_double(v, w);
    };
    table["sweep_stop_dbw"] = [&](const std::string& v, const std::string& w) {
        cfg.sweep.stop_dbw = parse_double(v, w);
    };
    table["sweep_points"] = [&](const std::string& v, const std::string& w) {
        cfg.sweep.points = static_cast<int>(parse_u64(v, w));
    };

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value at " + where);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end())
            throw std::runtime_error("config: unknown key '" + key + "' at " + where);
        it->second(value, where);
    }

    if (g.any && coil_constant_set)
        throw std::runtime_error(
            "config: coil geometry keys and coil_constant_hm3 are mutually exclusive");
    if (g.any) cfg.params.coil_constant = coil_constant(g.geom);
    return base;
}

ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return apply_config_text(std::move(base), ss.str(), path);
}

std::string canonical_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    const auto& p = cfg.params;
    os << "transmit_power_w=" << fmt_full(p.transmit_power) << '\n'
       << "omega_rad_per_s=" << (cfg.omega_set ? fmt_full(p.angular_frequency) : "unset") << '\n'
       << "calibrate_omega=" << (cfg.calibrate ? 1 : 0) << '\n'
       << "anchor_dbw=" << fmt_full(cfg.anchor_dbw) << '\n'
       << "anchor_alignment=" << fmt_full(cfg.anchor_alignment) << '\n'
       << "tx_resistance_ohm=" << fmt_full(p.tx_resistance) << '\n'
       << "rx_resistance_ohm=" << fmt_full(p.rx_resistance) << '\n'
       << "coil_constant_hm3=" << fmt_full(p.coil_constant) << '\n'
       << "cell_radius_m=" << fmt_full(p.cell_radius) << '\n'
       << "density_per_m2=" << fmt_full(p.density) << '\n'
       << "power_threshold_w=" << fmt_full(p.power_threshold) << '\n'
       << "load_min_ohm=" << fmt_full(p.load_min) << '\n'
       << "load_max_ohm=" << fmt_full(p.load_max) << '\n'
       << "typical_alignment=" << fmt_full(cfg.query.typical_alignment) << '\n'
       << "typical_distance_m=" << fmt_full(cfg.query.typical_distance) << '\n'
       << "common_load_ohm=" << fmt_full(cfg.query.common_load) << '\n'
       << "threshold_w=" << fmt_full(cfg.query.threshold) << '\n';
    os << "mutual_inductances_h=";
    for (std::size_t i = 0; i < cfg.mutual_inductances.size(); ++i)
        os << (i ? "," : "") << fmt_full(cfg.mutual_inductances[i]);
    os << '\n';
    os << "trials=" << cfg.sim.trials << '\n'
       << "seed=" << cfg.sim.seed << '\n'
       << "block_size=" << cfg.sim.block_size << '\n'
       << "angle_mode=" << (cfg.sim.angle_mode == AngleMode::ExactRandom ? "exact" : "unit")
       << '\n'
       << "typical_mode="
       << (cfg.sim.typical_mode == TypicalMode::FixedTypical ? "fixed" : "uniform") << '\n'
       << "outer_abs_tol=" << fmt_full(cfg.quad.outer_abs_tol) << '\n'
       << "inner_rel_tol=" << fmt_full(cfg.quad.inner_rel_tol) << '\n'
       << "max_intervals=" << cfg.quad.max_intervals << '\n'
       << "min_intervals=" << cfg.quad.min_intervals << '\n'
       << "inner_method="
       << (cfg.quad.inner_method == InnerMethod::IncompleteGamma ? "gamma" : "partition") << '\n'
       << "accelerate=" << (cfg.quad.accelerate ? 1 : 0) << '\n'
       << "sweep_start_dbw=" << fmt_full(cfg.sweep.start_dbw) << '\n'
       << "sweep_stop_dbw=" << fmt_full(cfg.sweep.stop_dbw) << '\n'
       << "sweep_points=" << cfg.sweep.points << '\n';
    return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a 64-bit over the canonical rendering
    const std::string s = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<Fig2Row> run_fig2(const ExperimentConfig& cfg) {
    const double omega = resolve_omega(cfg);
    struct Case {
        double alignment, distance;
    };
    const Case cases[] = {{1.0, 1.5}, {2.0, 1.5}, {1.0, 3.0}, {2.0, 3.0}};

    std::vector<Fig2Row> rows;
    SystemParams p = cfg.params;
    p.angular_frequency = omega;
    for (const auto& c : cases) {
        OutageQuery q = cfg.query;
        q.typical_alignment = c.alignment;
        q.typical_distance = c.distance;
        std::ostringstream label;
        label << "I0=" << fmt(c.alignment, "%g") << ";d0=" << fmt(c.distance, "%g");
        for (double dbw : cfg.sweep.values_dbw()) {
            p.transmit_power = dbw_to_watts(dbw);
            Fig2Row row;
            row.label = label.str();
            row.alignment = c.alignment;
            row.distance = c.distance;
            row.power_dbw = dbw;
            row.power_watts = p.transmit_power;
            row.status = "ok";
            try {
                const OutageResult res = outage_strong(p, q, cfg.quad);
                row.analytic = res.probability;
                row.analytic_error = res.est_error;
                row.intervals = res.intervals_used;
                row.feasible = res.feasible;
            } catch (const QuadratureError& err) {
                // keep the sweep alive; the row carries the partial estimate
                row.analytic = err.partial.probability;
                row.analytic_error = err.partial.est_error;
                row.intervals = err.partial.intervals_used;
                row.feasible = err.partial.feasible;
                row.status = std::string("quadrature_error: ") + err.what();
            }
            SimConfig sim = cfg.sim;
            sim.typical_mode = TypicalMode::FixedTypical;
            sim.angle_mode = AngleMode::ExactRandom;
            const SimEstimate exact = simulate_outage_strong(p, q, sim);
            sim.angle_mode = AngleMode::UnitAlignment;
            const SimEstimate unit = simulate_outage_strong(p, q, sim);
            row.mc_exact = exact.mean;
            row.mc_exact_se = exact.standard_error;
            row.mc_unit = unit.mean;
            row.mc_unit_se = unit.standard_error;
            row.trials = sim.trials;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<Fig3Row> run_fig3(const ExperimentConfig& cfg) {
    const double omega = resolve_omega(cfg);
    const double r = cfg.params.rx_resistance;
    const double base_R = cfg.params.tx_resistance;
    const double base_x = cfg.query.common_load;
    struct Case {
        double alignment, tx_resistance, load;
    };
    // the five published configurations plus the R-comparison at I0=0.5, x=r
    const Case cases[] = {
        {0.25, base_R, base_x}, {0.25, 2.5, base_x}, {0.5, base_R, r},
        {0.5, base_R, 1.0},     {0.5, base_R, base_x}, {0.5, 2.5, r},
    };

    std::vector<Fig3Row> rows;
    for (const auto& c : cases) {
        SystemParams p = cfg.params;
        p.angular_frequency = omega;
        p.tx_resistance = c.tx_resistance;
        OutageQuery q = cfg.query;
        q.typical_alignment = c.alignment;
        q.common_load = c.load;
        std::ostringstream label;
        label << "I0=" << fmt(c.alignment, "%g") << ";R=" << fmt(c.tx_resistance, "%g")
              << ";x=" << fmt(c.load, "%g");
        for (double dbw : cfg.sweep.values_dbw()) {
            p.transmit_power = dbw_to_watts(dbw);
            Fig3Row row;
            row.label = label.str();
            row.alignment = c.alignment;
            row.tx_resistance = c.tx_resistance;
            row.load = c.load;
            row.power_dbw = dbw;
            row.power_watts = p.transmit_power;
            row.analytic = outage_loose(p, q);
            const SimEstimate mc = simulate_outage_loose(p, q, cfg.sim);
            row.mc = mc.mean;
            row.mc_se = mc.standard_error;
            row.trials = cfg.sim.trials;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Fig4Result run_fig4(const ExperimentConfig& cfg) {
    const double omega = resolve_omega(cfg);
    require(!cfg.mutual_inductances.empty(), "run_fig4: mutual_inductances must be nonempty");
    GameSpec game;
    game.mutual_inductances = cfg.mutual_inductances;
    game.params = cfg.params;
    game.params.angular_frequency = omega;

    Fig4Result out;
    out.equilibrium = solve_equilibrium(game);

    const std::size_t K = cfg.mutual_inductances.size();
    auto add_policy = [&](const std::string& name, const std::vector<double>& loads) {
        NetworkInstance net;
        net.receivers.resize(K);
        for (std::size_t i = 0; i < K; ++i)
            net.receivers[i] = {cfg.mutual_inductances[i], loads[i]};
        for (std::size_t i = 0; i < K; ++i) {
            Fig4Row row;
            row.receiver = static_cast<int>(i + 1);
            row.policy = name;
            row.load = loads[i];
            row.power_watts = harvested_power(game.params, net, i);
            out.rows.push_back(std::move(row));
        }
    };
    add_policy("equilibrium", out.equilibrium.loads);
    add_policy("load=r", std::vector<double>(K, game.params.rx_resistance));
    add_policy("load=max", std::vector<double>(K, game.params.load_max));
    return out;
}

namespace {

void write_metadata_csv(std::ostream& os, const ExperimentConfig& cfg, const char* experiment) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    os << "# tool=mrcwpt " << kToolVersion << "\n"
       << "# experiment=" << experiment << "\n"
       << "# config_hash=" << hash << "\n"
       << "# seed=" << cfg.sim.seed << "\n"
       << "# trials=" << cfg.sim.trials << "\n";
    if (cfg.omega_set) os << "# omega_rad_per_s=" << fmt_full(cfg.params.angular_frequency) << "\n";
}

nlohmann::json metadata_json(const ExperimentConfig& cfg, const char* experiment) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    nlohmann::json j{{"record", "metadata"},
                     {"tool", std::string("mrcwpt ") + kToolVersion},
                     {"experiment", experiment},
                     {"config_hash", hash},
                     {"seed", cfg.sim.seed},
                     {"trials", cfg.sim.trials}};
    if (cfg.omega_set) j["omega_rad_per_s"] = cfg.params.angular_frequency;
    return j;
}

}  // namespace

void write_fig2(std::ostream& os, const ExperimentConfig& cfg, const std::vector<Fig2Row>& rows,
                OutputFormat fmt_kind) {
    if (fmt_kind == OutputFormat::Csv) {
        write_metadata_csv(os, cfg, "fig2");
        os << "label,alignment,distance_m,power_dbw,power_w,analytic,analytic_err,intervals,"
              "feasible,status,mc_exact,mc_exact_se,mc_unit,mc_unit_se,trials\n";
        for (const auto& r : rows) {
            os << r.label << ',' << fmt(r.alignment) << ',' << fmt(r.distance) << ','
               << fmt(r.power_dbw) << ',' << fmt(r.power_watts) << ',' << fmt(r.analytic) << ','
               << fmt(r.analytic_error, "%.3g") << ',' << r.intervals << ','
               << (r.feasible ? 1 : 0) << ',' << r.status << ',' << fmt(r.mc_exact) << ','
               << fmt(r.mc_exact_se) << ',' << fmt(r.mc_unit) << ',' << fmt(r.mc_unit_se) << ','
               << r.trials << '\n';
        }
        return;
    }
    os << metadata_json(cfg, "fig2").dump() << '\n';
    for (const auto& r : rows) {
        nlohmann::json j{{"record", "row"},
                         {"label", r.label},
                         {"alignment", r.alignment},
                         {"distance_m", r.distance},
                         {"power_dbw", r.power_dbw},
                         {"power_w", r.power_watts},
                         {"analytic", r.analytic},
                         {"analytic_err", r.analytic_error},
                         {"intervals", r.intervals},
                         {"feasible", r.feasible},
                         {"status", r.status},
                         {"mc_exact", r.mc_exact},
                         {"mc_exact_se", r.mc_exact_se},
                         {"mc_unit", r.mc_unit},
                         {"mc_unit_se", r.mc_unit_se},
                         {"trials", r.trials}};
        os << j.dump() << '\n';
    }
}

void write_fig3(std::ostream& os, const ExperimentConfig& cfg, const std::vector<Fig3Row>& rows,
                OutputFormat fmt_kind) {
    if (fmt_kind == OutputFormat::Csv) {
        write_metadata_csv(os, cfg, "fig3");
        os << "label,alignment,tx_resistance_ohm,load_ohm,power_dbw,power_w,analytic,mc,mc_se,"
              "trials\n";
        for (const auto& r : rows) {
            os << r.label << ',' << fmt(r.alignment) << ',' << fmt(r.tx_resistance) << ','
               << fmt(r.load) << ',' << fmt(r.power_dbw) << ',' << fmt(r.power_watts) << ','
               << fmt(r.analytic) << ',' << fmt(r.mc) << ',' << fmt(r.mc_se) << ',' << r.trials
               << '\n';
        }
        return;
    }
    os << metadata_json(cfg, "fig3").dump() << '\n';
    for (const auto& r : rows) {
        nlohmann::json j{{"record", "row"},
                         {"label", r.label},
                         {"alignment", r.alignment},
                         {"tx_resistance_ohm", r.tx_resistance},
                         {"load_ohm", r.load},
                         {"power_dbw", r.power_dbw},
                         {"power_w", r.power_watts},
                         {"analytic", r.analytic},
                         {"mc", r.mc},
                         {"mc_se", r.mc_se},
                         {"trials", r.trials}};
        os << j.dump() << '\n';
    }
}

void write_fig4(std::ostream& os, const ExperimentConfig& cfg, const Fig4Result& result,
                OutputFormat fmt_kind) {
    if (fmt_kind == OutputFormat::Csv) {
        write_metadata_csv(os, cfg, "fig4");
        os << "# equilibrium_sweeps=" << result.equilibrium.sweeps << "\n";
        os << "receiver,policy,load_ohm,power_w\n";
        for (const auto& r : result.rows)
            os << r.receiver << ',' << r.policy << ',' << fmt(r.load) << ','
               << fmt(r.power_watts) << '\n';
        return;
    }
    auto meta = metadata_json(cfg, "fig4");
    meta["equilibrium_sweeps"] = result.equilibrium.sweeps;
    os << meta.dump() << '\n';
    for (const auto& r : result.rows) {
        nlohmann::json j{{"record", "row"},
                         {"receiver", r.receiver},
                         {"policy", r.policy},
                         {"load_ohm", r.load},
                         {"power_w", r.power_watts}};
        os << j.dump() << '\n';
    }
}

}  // namespace mrcwpt::experiments
