#include "mrcwpt/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mrcwpt {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_other_loads(const GameSpec& g, std::size_t i, std::span<const double> loads) {
    require(loads.size() == g.mutual_inductances.size(),
            "game: load profile size must match receiver count");
    for (std::size_t k = 0; k < loads.size(); ++k) {
        if (k == i) continue;
        require(loads[k] >= g.params.load_min && loads[k] <= g.params.load_max,
                "game: other players' loads must lie within the load bounds");
    }
}

NetworkInstance make_network(const GameSpec& g, std::span<const double> loads) {
    NetworkInstance net;
    net.receivers.resize(loads.size());
    for (std::size_t k = 0; k < loads.size(); ++k)
        net.receivers[k] = {g.mutual_inductances[k], loads[k]};
    return net;
}

}  // namespace

void GameSpec::validate() const {
    require(!mutual_inductances.empty(), "GameSpec: need at least one receiver");
    require(params.angular_frequency > 0.0, "GameSpec: angular_frequency must be set (> 0)");
    require(params.tx_resistance > 0.0, "GameSpec: tx_resistance must be positive");
    require(params.rx_resistance > 0.0, "GameSpec: rx_resistance must be positive");
    require(params.transmit_power >= 0.0, "GameSpec: transmit_power must be >= 0");
    require(params.load_min > 0.0 && params.load_max >= params.load_min,
            "GameSpec: need 0 < load_min <= load_max");
    require(tolerance > 0.0, "GameSpec: tolerance must be positive");
    require(max_sweeps >= 1, "GameSpec: max_sweeps must be >= 1");
}

InteractionTerms interaction_terms(const GameSpec& g, std::size_t i,
                                   std::span<const double> loads) {
    g.validate();
    require(i < g.mutual_inductances.size(), "interaction_terms: index out of range");
    check_other_loads(g, i, loads);
    const double w2 = g.params.angular_frequency * g.params.angular_frequency;
    InteractionTerms terms;
    terms.beta = w2 * g.mutual_inductances[i] * g.mutual_inductances[i];
    terms.gamma = g.params.tx_resistance;
    for (std::size_t k = 0; k < loads.size(); ++k) {
        if (k == i) continue;
        terms.gamma += w2 * g.mutual_inductances[k] * g.mutual_inductances[k] /
                       (g.params.rx_resistance + loads[k]);
    }
    return terms;
}

double utility(const GameSpec& g, std::size_t i, std::span<const double> loads) {
    g.validate();
    require(i < g.mutual_inductances.size(), "utility: index out of range");
    return harvested_power(g.params, make_network(g, loads), i);
}

double utility_derivative(const GameSpec& g, std::size_t i, std::span<const double> loads) {
    const auto [beta, gamma] = interaction_terms(g, i, loads);
    const double alpha = g.params.transmit_power * beta;
    const double r = g.params.rx_resistance;
    const double x = loads[i];
    require(x > 0.0, "utility_derivative: own load must be positive");
    const double rx = r + x;
    const double inner = beta + gamma * rx;
    return alpha * (beta * r + gamma * r * r - gamma * x * x) / (rx * rx * inner * inner);
}

double best_response(const GameSpec& g, std::size_t i, std::span<const double> loads) {
    const auto [beta, gamma] = interaction_terms(g, i, loads);
    const double r = g.params.rx_resistance;
    const double xi = std::sqrt(r * (r + beta / gamma));
    return std::clamp(xi, g.params.load_min, g.params.load_max);
}

EquilibriumResult solve_equilibrium(const GameSpec& g, std::vector<double> initial) {
    g.validate();
    const std::size_t K = g.mutual_inductances.size();
    if (initial.empty()) initial.assign(K, g.params.load_min);
    require(initial.size() == K, "solve_equilibrium: initial profile size mismatch");
    for (double x : initial)
        require(x >= g.params.load_min && x <= g.params.load_max,
                "solve_equilibrium: initial loads must lie within bounds");

    std::vector<double> loads = std::move(initial);
    std::vector<double> next(K);
    EquilibriumResult res;
    for (res.sweeps = 1; res.sweeps <= g.max_sweeps; ++res.sweeps) {
        double max_delta = 0.0;
        if (g.order == UpdateOrder::Sequential) {
            for (std::size_t i = 0; i < K; ++i) {
                const double x = best_response(g, i, loads);
                max_delta = std::max(max_delta, std::abs(x - loads[i]));
                loads[i] = x;
            }
        } else {
            for (std::size_t i = 0; i < K; ++i) next[i] = best_response(g, i, loads);
            for (std::size_t i = 0; i < K; ++i)
                max_delta = std::max(max_delta, std::abs(next[i] - loads[i]));
            loads = next;
        }
        if (max_delta < g.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.sweeps = std::min(res.sweeps, g.max_sweeps);
    res.loads = loads;
    res.residuals.resize(K);
    res.utilities.resize(K);
    for (std::size_t i = 0; i < K; ++i) {
        res.residuals[i] = std::abs(loads[i] - best_response(g, i, loads));
        res.utilities[i] = utility(g, i, loads);
    }
    if (!res.converged)
        throw EquilibriumError("solve_equilibrium: best-response iteration did not converge "
                               "within max_sweeps",
                               res);
    return res;
}

StandardFunctionReport verify_standard_function(const GameSpec& g, std::size_t i,
                                                std::span<const double> loads,
                                                std::span<const double> probe_grid,
                                                std::span<const double> scale_factors) {
    const auto [beta, gamma] = interaction_terms(g, i, loads);
    require(!probe_grid.empty(), "verify_standard_function: probe grid must be nonempty");
    for (double x : probe_grid)
        require(x > 0.0, "verify_standard_function: probe grid must be positive");
    for (std::size_t k = 1; k < probe_grid.size(); ++k)
        require(probe_grid[k] > probe_grid[k - 1],
                "verify_standard_function: probe grid must be strictly increasing");
    static constexpr double kDefaultFactors[] = {1.5, 2.0, 5.0};
    if (scale_factors.empty()) scale_factors = kDefaultFactors;
    for (double c : scale_factors)
        require(c > 1.0, "verify_standard_function: scale factors must exceed 1");

    const double r = g.params.rx_resistance;
    const double xi = std::sqrt(r * (r + beta / gamma));  // unclamped maximizer
    std::vector<double> probe(loads.begin(), loads.end());
    auto f = [&](double x) {
        probe[i] = x;
        return utility(g, i, probe);
    };

    StandardFunctionReport rep;
    auto witness = [](const char* prop, double x) {
        std::ostringstream os;
        os << prop << " violated at x = " << x;
        return os.str();
    };

    rep.positive = true;
    for (double x : probe_grid) {
        if (!(f(x) > 0.0)) {
            rep.positive = false;
            rep.violations.push_back(witness("positivity", x));
            break;
        }
    }

    rep.unimodal = true;
    for (std::size_t k = 1; k < probe_grid.size(); ++k) {
        const double a = probe_grid[k - 1];
        const double b = probe_grid[k];
        const double fa = f(a);
        const double fb = f(b);
        const double slack = 1e-12 * std::max(std::abs(fa), std::abs(fb));
        if (b <= xi && fb < fa - slack) {  // must be nondecreasing left of xi
            rep.unimodal = false;
            rep.violations.push_back(witness("unimodality (increasing side)", b));
            break;
        }
        if (a >= xi && fb > fa + slack) {  // must be nonincreasing right of xi
            rep.unimodal = false;
            rep.violations.push_back(witness("unimodality (decreasing side)", b));
            break;
        }
    }

    rep.scalable = true;
    for (double c : scale_factors) {
        for (double x : probe_grid) {
            if (!(c * f(x) - f(c * x) > 0.0)) {
                rep.scalable = false;
                rep.violations.push_back(witness("scalability", x));
                break;
            }
        }
        if (!rep.scalable) break;
    }

    // the analytic derivative must change sign exactly where the maximizer is
    rep.derivative_consistent = true;
    probe.assign(loads.begin(), loads.end());
    auto fp = [&](double x) {
        probe[i] = x;
        return utility_derivative(g, i, probe);
    };
    for (std::size_t k = 1; k < probe_grid.size(); ++k) {
        const double a = probe_grid[k - 1];
        const double b = probe_grid[k];
        if (fp(a) > 0.0 && fp(b) < 0.0 && !(a <= xi && xi <= b)) {
            rep.derivative_consistent = false;
            rep.violations.push_back(witness("derivative sign change away from maximizer", a));
            break;
        }
        if (fp(a) < 0.0 && fp(b) > 0.0) {  // f' may only flip from + to -
            rep.derivative_consistent = false;
            rep.violations.push_back(witness("derivative sign change reversed", a));
            break;
        }
    }
    return rep;
}

double symmetric_limit_power(int receivers, double transmit_power, double epsilon) {
    require(receivers >= 1, "symmetric_limit_power: receivers must be >= 1");
    require(epsilon > 0.0, "symmetric_limit_power: epsilon must be positive");
    require(transmit_power >= 0.0, "symmetric_limit_power: transmit_power must be >= 0");
    // any common nonzero coupling and load work; the epsilon -> 0 limit is P/K
    constexpr double kMutual = 1e-7;  // H
    constexpr double kLoad = 1.0;     // ohm
    SystemParams p;
    p.transmit_power = transmit_power;
    p.angular_frequency = 1e7;
    p.tx_resistance = epsilon;
    p.rx_resistance = epsilon;
    p.coil_constant = 1.0;  // unused by harvested_power
    NetworkInstance net;
    net.receivers.assign(static_cast<std::size_t>(receivers), {kMutual, kLoad});
    return harvested_power(p, net, 0);
}

}  // namespace mrcwpt
