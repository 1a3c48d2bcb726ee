/// Acceptance gate: one criterion per invocation (`acceptance <n> [cli-path]`),
/// a single PASS/FAIL line on stdout, exit 0 on pass. Each check restates an
/// externally pinned property of the library: published equilibrium loads,
/// the zero-outage power anchor, closed-form/simulation agreement, and the
/// reproducibility contract of the experiment runner.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mrcwpt/experiments.hpp"

using namespace mrcwpt;
using namespace mrcwpt::experiments;

namespace {

SystemParams reference_params() {
    ExperimentConfig cfg = default_config();
    return cfg.params;
}

double calibrated_omega() {
    ExperimentConfig cfg = default_config();
    cfg.calibrate = true;
    return resolve_omega(cfg);
}

GameSpec reference_game() {
    GameSpec g;
    g.mutual_inductances = {-0.0921e-6, 0.0402e-6, 0.0370e-6, 0.0245e-6};
    g.params = reference_params();
    g.params.angular_frequency = calibrated_omega();
    return g;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  violated: " << what << "\n";
        }
    }
    void note(const std::string& what) { detail << "  " << what << "\n"; }
};

// --- criterion 1: frequency calibration round trip --------------------------
Outcome criterion_1() {
    Outcome out;
    ExperimentConfig cfg = default_config();
    cfg.calibrate = true;
    const double omega = resolve_omega(cfg);
    SystemParams p = cfg.params;
    p.angular_frequency = omega;
    OutageQuery q = cfg.query;
    q.typical_alignment = 0.5;
    q.common_load = p.rx_resistance;
    const double back_dbw = watts_to_dbw(min_power_zero_outage(p, q));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "omega=%.10g, anchor back out=%.8f dBW", omega, back_dbw);
    out.note(buf);
    out.require(std::abs(back_dbw - 24.5847) < 1e-4,
                "round trip within 1e-4 dB of 24.5847 dBW");
    return out;
}

// --- criterion 2: published equilibrium loads -------------------------------
Outcome criterion_2() {
    Outcome out;
    const GameSpec g = reference_game();
    const EquilibriumResult eq = solve_equilibrium(g);
    const double expected[] = {0.1505, 0.0796, 0.0776, 0.0716};
    out.require(eq.converged, "equilibrium converged");
    for (std::size_t i = 0; i < 4; ++i) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "x%zu = %.6f ohm (published %.4f)", i + 1, eq.loads[i],
                      expected[i]);
        out.note(buf);
        out.require(std::abs(eq.loads[i] - expected[i]) < 5e-4,
                    "load within 5e-4 ohm of the published value");
    }
    return out;
}

// --- criterion 3: power invariance and uniqueness ---------------------------
Outcome criterion_3() {
    Outcome out;
    GameSpec g = reference_game();
    const auto base = solve_equilibrium(g);
    g.params.transmit_power *= 100.0;
    const auto scaled = solve_equilibrium(g);
    for (std::size_t i = 0; i < 4; ++i)
        out.require(base.loads[i] == scaled.loads[i],
                    "equilibrium identical at P and 100 P (bitwise)");
    g = reference_game();
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> ux(g.params.load_min, g.params.load_max);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
        const auto eq = solve_equilibrium(g, {ux(rng), ux(rng), ux(rng), ux(rng)});
        for (std::size_t i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(eq.loads[i] - base.loads[i]));
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "max spread across 20 random starts: %.3g ohm", worst);
    out.note(buf);
    out.require(worst < 1e-7, "20 random starts agree within 1e-7 ohm");
    return out;
}

// --- criterion 4: loose closed form vs simulation ---------------------------
Outcome criterion_4() {
    Outcome out;
    ExperimentConfig cfg = default_config();
    cfg.calibrate = true;
    cfg.sweep = {0.0, 27.0, 10};
    cfg.sim.trials = 100000;
    const auto rows = run_fig3(cfg);
    out.require(rows.size() == 60, "six configurations x ten sweep points");
    double worst_sigma = 0.0;
    for (const auto& r : rows) {
        const double diff = std::abs(r.analytic - r.mc);
        if (r.mc_se > 0.0) worst_sigma = std::max(worst_sigma, diff / r.mc_se);
        out.require(diff <= 3.0 * r.mc_se || diff == 0.0,
                    "|closed form - simulation| <= 3 SE at " + r.label + ", " +
                        std::to_string(r.power_dbw) + " dBW");
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst |diff|/SE over 60 points: %.2f", worst_sigma);
    out.note(buf);
    return out;
}

// --- criterion 5: strong-regime upper bound and tightness -------------------
Outcome criterion_5() {
    Outcome out;
    ExperimentConfig cfg = default_config();
    cfg.calibrate = true;
    cfg.sim.trials = 100000;
    const auto rows = run_fig2(cfg);
    out.require(rows.size() == 40, "four configurations x ten sweep points");
    double worst_gap_unit = 0.0, worst_gap_exact = 0.0;
    for (const auto& r : rows) {
        out.require(r.status == "ok", "quadrature converged at " + r.label);
        out.require(r.analytic >= 0.0 && r.analytic <= 1.0, "analytic in [0,1]");
        // the inversion upper-bounds the simulation in both angle models
        out.require(r.analytic >= r.mc_unit - 3.0 * r.mc_unit_se,
                    "analytic >= unit-alignment MC - 3 SE at " + r.label);
        out.require(r.analytic >= r.mc_exact - 3.0 * r.mc_exact_se,
                    "analytic >= exact-angle MC - 3 SE at " + r.label);
        // tightness against the simulation of the model the analysis solves
        // (interferer alignment pinned to 1); the exact-angle gap is reported
        // but not gated -- it measures the model approximation itself
        if (r.mc_unit >= 0.05 && r.mc_unit <= 0.95) {
            worst_gap_unit = std::max(worst_gap_unit, std::abs(r.analytic - r.mc_unit));
            out.require(std::abs(r.analytic - r.mc_unit) <= 0.02,
                        "gap <= 0.02 where MC in [0.05, 0.95] at " + r.label);
        }
        if (r.mc_exact >= 0.05 && r.mc_exact <= 0.95)
            worst_gap_exact = std::max(worst_gap_exact, std::abs(r.analytic - r.mc_exact));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "worst mid-range gap: %.4f (unit-alignment MC), %.4f (exact-angle MC)",
                  worst_gap_unit, worst_gap_exact);
    out.note(buf);
    return out;
}

// --- criterion 6: degenerate analytics --------------------------------------
Outcome criterion_6() {
    Outcome out;
    SystemParams p = reference_params();
    p.angular_frequency = calibrated_omega();
    OutageQuery q;
    QuadratureConfig quad;

    p.transmit_power = 0.1;
    out.require(lambda_threshold(p, q) < 0.0, "0.1 W sits below the feasibility bound");
    out.require(outage_strong(p, q, quad).probability == 1.0,
                "outage exactly 1 when the threshold is infeasible");

    p.transmit_power = 100.0;
    p.density = 1000.0;
    const double crowded = outage_strong(p, q, quad).probability;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "outage at density 1e3: %.6f", crowded);
    out.note(buf);
    out.require(std::abs(crowded - 1.0) < 1e-2, "outage within 1e-2 of 1 at density 1e3");

    p = reference_params();
    p.angular_frequency = calibrated_omega();
    p.transmit_power = min_power_zero_outage(p, q);
    out.require(outage_loose(p, q) == 0.0, "loose outage exactly 0 at the minimum power");
    return out;
}

// --- criterion 7: characteristic-function oracle -----------------------------
Outcome criterion_7() {
    Outcome out;
    QuadratureConfig quad;
    SimConfig sim;
    sim.trials = 100000;
    sim.seed = 20260814;
    sim.angle_mode = AngleMode::UnitAlignment;
    for (double t : {0.1, 1.0, 10.0}) {
        const std::complex<double> ana = characteristic_fn_S(t, 0.1, 5.0, quad);
        const CharFnEstimate emp = empirical_char_fn(t, 0.1, 5.0, sim);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "t=%.1f: analytic %.6f%+.6fi, empirical %.6f%+.6fi (SE %.1e, %.1e)", t,
                      ana.real(), ana.imag(), emp.mean.real(), emp.mean.imag(), emp.se_real,
                      emp.se_imag);
        out.note(buf);
        out.require(std::abs(ana.real() - emp.mean.real()) <= 3.0 * emp.se_real,
                    "real part within 3 SE");
        out.require(std::abs(ana.imag() - emp.mean.imag()) <= 3.0 * emp.se_imag,
                    "imaginary part within 3 SE");
    }
    out.require(characteristic_fn_S(0.0, 0.1, 5.0, quad) == std::complex<double>(1.0, 0.0),
                "transform equals 1 at t=0");
    for (double t = 0.01; t < 1e4; t *= 2.5)
        out.require(std::abs(characteristic_fn_S(t, 0.1, 5.0, quad)) <= 1.0 + 1e-12,
                    "|transform| <= 1 on the t grid");
    return out;
}

// --- criterion 8: alignment-moment integral ----------------------------------
Outcome criterion_8() {
    Outcome out;
    const double a = expected_abs_alignment(AlignmentRule::AdaptiveKronrod);
    const double b = expected_abs_alignment(AlignmentRule::GaussLegendre);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "E|I| = %.12f (adaptive) / %.12f (fixed rule)", a, b);
    out.note(buf);
    out.require(std::abs(a - b) < 1e-6, "two quadrature rules agree to 1e-6");
    // The gated range below follows the published claim (approx 0.9894). The
    // integral 8 E(3/4)/pi^2 = 0.9816450414..., which both rules reproduce to
    // machine precision, sits outside it; a 3-point Simpson evaluation of the
    // reduced integrand gives 0.98937 and explains the published figure. The
    // range check is kept as stated and fails honestly.
    out.note("exact value 8 E(3/4)/pi^2 = 0.981645041363 lies outside [0.985, 0.995];");
    out.note("the published 0.9894 matches a coarse 3-point evaluation of the same integral");
    out.require(a >= 0.985 && a <= 0.995, "E|I| within the published range [0.985, 0.995]");
    return out;
}

// --- criterion 9: best-response oracle ---------------------------------------
Outcome criterion_9() {
    Outcome out;
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> uM(1e-8, 1.2e-7), ux(0.01, 5.0), usign(0.0, 1.0);
    const int grid_n = 10000;
    int worst_steps = 0;
    for (int trial = 0; trial < 100; ++trial) {
        GameSpec g = reference_game();
        const std::size_t K = 2 + trial % 5;
        g.mutual_inductances.resize(K);
        for (auto& m : g.mutual_inductances)
            m = (usign(rng) < 0.5 ? -1.0 : 1.0) * uM(rng);
        std::vector<double> loads(K);
        for (auto& x : loads) x = ux(rng);
        const std::size_t i = trial % K;

        const double xi = best_response(g, i, loads);
        const double step = (g.params.load_max - g.params.load_min) / (grid_n - 1);
        double best_grid = g.params.load_min, best_val = -1.0;
        std::vector<double> probe = loads;
        for (int k = 0; k < grid_n; ++k) {
            probe[i] = g.params.load_min + k * step;
            const double v = utility(g, i, probe);
            if (v > best_val) {
                best_val = v;
                best_grid = probe[i];
            }
        }
        const int steps_off = static_cast<int>(std::round(std::abs(xi - best_grid) / step));
        worst_steps = std::max(worst_steps, steps_off);
        out.require(std::abs(xi - best_grid) <= step + 1e-12,
                    "closed-form response within one grid step of the argmax");

        std::vector<double> grid;
        for (int k = 0; k <= 40; ++k)
            grid.push_back(g.params.load_min * std::pow(500.0, k / 40.0));
        const auto report = verify_standard_function(g, i, loads, grid);
        out.require(report.all_hold(), "standard-function certificate holds");
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst grid offset over 100 draws: %d step(s)", worst_steps);
    out.note(buf);
    return out;
}

// --- criterion 10: symmetric limit and conservation --------------------------
Outcome criterion_10() {
    Outcome out;
    const double split = symmetric_limit_power(4, 10.0, 1e-9);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "symmetric 4-receiver limit: %.6f W", split);
    out.note(buf);
    out.require(std::abs(split - 2.5) / 2.5 < 1e-3, "P/K split within 1e-3 relative");

    SystemParams p = reference_params();
    p.angular_frequency = calibrated_omega();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> uM(-1.5e-7, 1.5e-7), ux(0.01, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        NetworkInstance net;
        const std::size_t K = 1 + rng() % 6;
        for (std::size_t i = 0; i < K; ++i) net.receivers.push_back({uM(rng), ux(rng)});
        double total = 0.0;
        for (std::size_t i = 0; i < K; ++i) total += harvested_power(p, net, i);
        out.require(total < p.transmit_power, "total harvested power below the budget");
    }
    return out;
}

// --- criterion 11: distance law ----------------------------------------------
Outcome criterion_11() {
    Outcome out;
    const double rho = 5.0;
    std::vector<double> radii;
    radii.reserve(110000);
    auto rng = block_rng(99, 0);
    while (radii.size() < 100000) {
        const auto pts = sample_ppp(0.5, rho, AngleMode::UnitAlignment, rng);
        for (const auto& pt : pts) radii.push_back(pt.distance);
    }
    radii.resize(100000);
    std::sort(radii.begin(), radii.end());
    const double n = static_cast<double>(radii.size());
    double d = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double f = distance_cdf(radii[i], rho);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    const double critical = 1.628 / std::sqrt(n);  // 1% point of the KS distribution
    char buf[96];
    std::snprintf(buf, sizeof(buf), "KS statistic %.5f vs 1%% critical value %.5f", d, critical);
    out.note(buf);
    out.require(d < critical, "radial law matches F(x) = x^2/rho^2 at the 1% level");
    return out;
}

// --- criterion 12: byte-identical reruns --------------------------------------
Outcome criterion_12(const std::string& cli) {
    Outcome out;
    if (cli.empty()) {
        out.require(false, "path to the experiment runner binary (argv[2]) required");
        return out;
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mrcwpt_accept12";
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "run.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "calibrate_omega = 1\nseed = 7\ntrials = 100000\n";
    }
    const fs::path out1 = dir / "a.csv", out2 = dir / "b.csv";
    auto run = [&](const fs::path& target) {
        const std::string cmd = "'" + cli + "' fig2 --config '" + cfg_path.string() +
                                "' --out '" + target.string() + "'";
        return std::system(cmd.c_str());
    };
    out.require(run(out1) == 0, "first run exits cleanly");
    out.require(run(out2) == 0, "second run exits cleanly");
    std::ifstream a(out1, std::ios::binary), b(out2, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    out.require(!sa.str().empty(), "output not empty");
    out.require(sa.str() == sb.str(), "reruns byte-identical");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%zu bytes per table", sa.str().size());
    out.note(buf);
    return out;
}

const char* kLabels[] = {
    "",
    "frequency calibration round trip",
    "published equilibrium loads reproduced",
    "equilibrium power-invariance and uniqueness",
    "loose-regime closed form matches simulation (6 configs x 10 points)",
    "strong-regime inversion upper-bounds simulation and stays tight",
    "degenerate analytics (infeasible, crowded, minimum power)",
    "characteristic-function transform matches empirical oracle",
    "alignment-moment integral (two rules + published range)",
    "best response matches grid argmax; standard-function certificate",
    "symmetric-limit power split and power conservation",
    "uniform-in-disk distance law (KS at 1%)",
    "experiment runner reruns byte-identical",
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion 1..12> [cli-path]\n";
        return 2;
    }
    const int n = std::atoi(argv[1]);
    Outcome out;
    try {
        switch (n) {
            case 1: out = criterion_1(); break;
            case 2: out = criterion_2(); break;
            case 3: out = criterion_3(); break;
            case 4: out = criterion_4(); break;
            case 5: out = criterion_5(); break;
            case 6: out = criterion_6(); break;
            case 7: out = criterion_7(); break;
            case 8: out = criterion_8(); break;
            case 9: out = criterion_9(); break;
            case 10: out = criterion_10(); break;
            case 11: out = criterion_11(); break;
            case 12: out = criterion_12(argc > 2 ? argv[2] : ""); break;
            default: std::cerr << "unknown criterion " << n << "\n"; return 2;
        }
    } catch (const std::exception& e) {
        std::cout << "CRITERION " << n << " FAIL: " << kLabels[n] << "\n  exception: " << e.what()
                  << "\n";
        return 1;
    }
    std::cout << "CRITERION " << n << (out.pass ? " PASS: " : " FAIL: ") << kLabels[n] << "\n"
              << out.detail.str();
    return out.pass ? 0 : 1;
}
