#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "mrcwpt/circuit.hpp"
#include "mrcwpt/game.hpp"

using namespace mrcwpt;

namespace {

GameSpec reference_game() {
    GameSpec g;
    g.mutual_inductances = {-0.0921e-6, 0.0402e-6, 0.0370e-6, 0.0245e-6};
    g.params.transmit_power = 10.0;
    g.params.angular_frequency = 14200038.902156392;
    g.params.tx_resistance = 1.3440;
    g.params.rx_resistance = 0.0672;
    g.params.load_min = 0.01;
    g.params.load_max = 5.0;
    return g;
}

}  // namespace

TEST_CASE("utility is the harvested power of the network formula") {
    GameSpec g = reference_game();
    const std::vector<double> loads = {0.2, 0.3, 0.15, 0.25};
    NetworkInstance net;
    for (std::size_t i = 0; i < 4; ++i)
        net.receivers.push_back({g.mutual_inductances[i], loads[i]});
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(utility(g, i, loads) == doctest::Approx(harvested_power(g.params, net, i)));
}

TEST_CASE("utility derivative matches finite differences") {
    GameSpec g = reference_game();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0.02, 4.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> loads = {ux(rng), ux(rng), ux(rng), ux(rng)};
        const std::size_t i = trial % 4;
        const double h = 1e-6 * std::max(1.0, loads[i]);
        std::vector<double> hi = loads, lo = loads;
        hi[i] += h;
        lo[i] -= h;
        const double fd = (utility(g, i, hi) - utility(g, i, lo)) / (2.0 * h);
        const double an = utility_derivative(g, i, loads);
        CHECK(an == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("best response maximizes the utility over a fine grid") {
    GameSpec g = reference_game();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(0.02, 4.5);
    const int grid_n = 10000;
    const double step = (g.params.load_max - g.params.load_min) / (grid_n - 1);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> loads = {ux(rng), ux(rng), ux(rng), ux(rng)};
        const std::size_t i = trial % 4;
        const double xi = best_response(g, i, loads);
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
        CHECK(std::abs(xi - best_grid) <= step);
        // and the closed form really is at least as good as the grid winner
        probe[i] = xi;
        CHECK(utility(g, i, probe) >= best_val - 1e-12);
    }
}

TEST_CASE("best response clamps to the load bounds") {
    GameSpec g = reference_game();
    g.params.load_min = 1.0;  // force the interior optimum below the floor
    g.params.load_max = 5.0;
    const std::vector<double> loads = {1.0, 1.0, 1.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const double xi = best_response(g, i, loads);
        CHECK(xi >= g.params.load_min);
        CHECK(xi <= g.params.load_max);
    }
}

TEST_CASE("equilibrium reproduces the published four-receiver loads") {
    GameSpec g = reference_game();
    const EquilibriumResult eq = solve_equilibrium(g);
    REQUIRE(eq.converged);
    const double expected[] = {0.1505, 0.0796, 0.0776, 0.0716};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(eq.loads[i] - expected[i]) < 5e-4);
    // every receiver sits on its own best response
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(eq.loads[i] - best_response(g, i, eq.loads)) < 1e-7);
    CHECK(eq.utilities.size() == 4);
    CHECK(eq.residuals.size() == 4);
}

TEST_CASE("equilibrium is invariant to transmit power, exactly") {
    GameSpec g = reference_game();
    const auto base = solve_equilibrium(g);
    g.params.transmit_power *= 100.0;
    const auto scaled = solve_equilibrium(g);
    for (std::size_t i = 0; i < 4; ++i) CHECK(base.loads[i] == scaled.loads[i]);
}

TEST_CASE("equilibrium is unique across random starts and update orders") {
    GameSpec g = reference_game();
    const auto ref = solve_equilibrium(g);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ux(g.params.load_min, g.params.load_max);
    for (int s = 0; s < 20; ++s) {
        std::vector<double> start = {ux(rng), ux(rng), ux(rng), ux(rng)};
        const auto eq = solve_equilibrium(g, start);
        REQUIRE(eq.converged);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(eq.loads[i] - ref.loads[i]) < 1e-7);
    }
    g.order = UpdateOrder::Simultaneous;
    const auto jac = solve_equilibrium(g);
    REQUIRE(jac.converged);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(jac.loads[i] - ref.loads[i]) < 1e-7);
}

TEST_CASE("non-convergence surfaces as an explicit failure with the last iterate") {
    GameSpec g = reference_game();
    g.max_sweeps = 1;
    g.tolerance = 1e-15;
    CHECK_THROWS_AS((void)solve_equilibrium(g), EquilibriumError);
    try {
        (void)solve_equilibrium(g);
    } catch (const EquilibriumError& e) {
        CHECK(e.partial.loads.size() == 4);
        CHECK_FALSE(e.partial.converged);
        for (double x : e.partial.loads) {
            CHECK(x >= g.params.load_min);
            CHECK(x <= g.params.load_max);
        }
    }
}

TEST_CASE("interaction terms expose the best-response geometry") {
    GameSpec g = reference_game();
    const std::vector<double> loads = {0.1, 0.2, 0.3, 0.4};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto terms = interaction_terms(g, i, loads);
        CHECK(terms.beta > 0.0);
        CHECK(terms.gamma > 0.0);
        // unclamped maximizer xi = sqrt(r (r + beta/gamma))
        const double r = g.params.rx_resistance;
        const double xi = std::sqrt(r * (r + terms.beta / terms.gamma));
        const double clamped =
            std::min(g.params.load_max, std::max(g.params.load_min, xi));
        CHECK(best_response(g, i, loads) == doctest::Approx(clamped).epsilon(1e-12));
    }
}

TEST_CASE("standard-function certificate holds at the reference game") {
    GameSpec g = reference_game();
    const auto eq = solve_equilibrium(g);
    std::vector<double> grid;
    for (int k = 1; k <= 40; ++k) grid.push_back(0.01 + 0.12 * k);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto report = verify_standard_function(g, i, eq.loads, grid);
        CHECK(report.positive);
        CHECK(report.unimodal);
        CHECK(report.scalable);
        CHECK(report.derivative_consistent);
        CHECK(report.all_hold());
        CHECK(report.violations.empty());
    }
}

TEST_CASE("symmetric network limit splits the budget evenly") {
    // equal coupling, vanishing resistances: each of K receivers gets P/K
    CHECK(symmetric_limit_power(4, 10.0, 1e-9) == doctest::Approx(2.5).epsilon(1e-3));
    CHECK(symmetric_limit_power(2, 10.0, 1e-9) == doctest::Approx(5.0).epsilon(1e-3));
    CHECK(symmetric_limit_power(5, 7.0, 1e-9) == doctest::Approx(1.4).epsilon(1e-3));
    // tighter epsilon gets closer to the exact split
    const double err9 = std::abs(symmetric_limit_power(4, 10.0, 1e-9) - 2.5);
    const double err6 = std::abs(symmetric_limit_power(4, 10.0, 1e-6) - 2.5);
    CHECK(err9 <= err6 + 1e-12);
}

TEST_CASE("game validation rejects malformed specs") {
    GameSpec g = reference_game();
    g.mutual_inductances.clear();
    CHECK_THROWS(solve_equilibrium(g));
    g = reference_game();
    g.params.angular_frequency = 0.0;
    CHECK_THROWS(solve_equilibrium(g));
    g = reference_game();
    g.tolerance = 0.0;
    CHECK_THROWS(solve_equilibrium(g));
    g = reference_game();
    CHECK_THROWS((void)solve_equilibrium(g, {0.1, 0.1}));  // wrong start length
    CHECK_THROWS((void)utility(g, 7, std::vector<double>{0.1, 0.1, 0.1, 0.1}));
}
