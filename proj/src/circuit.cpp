#include "mrcwpt/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mrcwpt {

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// the subset of SystemParams every power formula needs (the full validate()
// also demands cell/process fields that pure circuit evaluations do not use)
void check_power_core(const SystemParams& p) {
    require(p.transmit_power >= 0.0, "SystemParams: transmit_power must be >= 0");
    require(p.angular_frequency > 0.0, "SystemParams: angular_frequency must be set (> 0)");
    require(p.tx_resistance > 0.0, "SystemParams: tx_resistance must be positive");
    require(p.rx_resistance > 0.0, "SystemParams: rx_resistance must be positive");
}
}  // namespace

void CoilGeometry::validate() const {
    require(tx_turns > 0, "CoilGeometry: tx_turns must be positive");
    require(rx_turns > 0, "CoilGeometry: rx_turns must be positive");
    require(tx_radius > 0.0, "CoilGeometry: tx_radius must be positive");
    require(rx_radius > 0.0, "CoilGeometry: rx_radius must be positive");
    require(permeability > 0.0, "CoilGeometry: permeability must be positive");
}

void SystemParams::validate() const {
    require(transmit_power >= 0.0, "SystemParams: transmit_power must be >= 0");
    require(angular_frequency > 0.0, "SystemParams: angular_frequency must be set (> 0)");
    require(tx_resistance > 0.0, "SystemParams: tx_resistance must be positive");
    require(rx_resistance > 0.0, "SystemParams: rx_resistance must be positive");
    require(coil_constant > 0.0, "SystemParams: coil_constant must be set (> 0)");
    require(cell_radius > 0.0, "SystemParams: cell_radius must be positive");
    require(density >= 0.0, "SystemParams: density must be >= 0");
    require(power_threshold > 0.0, "SystemParams: power_threshold must be positive");
    require(load_min > 0.0 && load_max >= load_min,
            "SystemParams: need 0 < load_min <= load_max");
}

void NetworkInstance::validate() const {
    for (const auto& rx : receivers)
        require(rx.load > 0.0, "NetworkInstance: every receiver load must be positive");
}

double coil_constant(const CoilGeometry& g) {
    g.validate();
    const double A2 = g.tx_radius * g.tx_radius;
    const double a2 = g.rx_radius * g.rx_radius;
    return M_PI * g.permeability * g.tx_turns * A2 * g.rx_turns * a2 / 4.0;
}

double alignment_factor(double theta_t, double theta_i) {
    return 2.0 * std::sin(theta_t) * std::sin(theta_i) + std::cos(theta_t) * std::cos(theta_i);
}

double mutual_inductance(double coil_const, double alignment, double distance) {
    require(distance > 0.0, "mutual_inductance: distance must be positive");
    return coil_const * alignment / (distance * distance * distance);
}

double harvested_power(const SystemParams& p, const NetworkInstance& net, std::size_t i) {
    check_power_core(p);
    net.validate();
    require(!net.receivers.empty(), "harvested_power: network must not be empty");
    if (i >= net.receivers.size())
        throw std::invalid_argument("harvested_power: receiver index out of range");
    const double w2 = p.angular_frequency * p.angular_frequency;
    double reflected = 0.0;
    for (const auto& rx : net.receivers)
        reflected += rx.mutual_inductance * rx.mutual_inductance / (p.rx_resistance + rx.load);
    const auto& me = net.receivers[i];
    const double rx_total = p.rx_resistance + me.load;
    const double numer = p.transmit_power * w2 * me.mutual_inductance * me.mutual_inductance *
                         me.load / (rx_total * rx_total);
    return numer / (p.tx_resistance + w2 * reflected);
}

double harvested_power_loose(const SystemParams& p, double mutual, double load) {
    check_power_core(p);
    require(load > 0.0, "harvested_power_loose: load must be positive");
    const double w2 = p.angular_frequency * p.angular_frequency;
    const double rx_total = p.rx_resistance + load;
    return p.transmit_power * w2 * mutual * mutual * load /
           (p.tx_resistance * rx_total * rx_total);
}

double typical_power(const SystemParams& p, double alignment, double distance, double load,
                     double interference_sum) {
    check_power_core(p);
    require(p.coil_constant > 0.0, "SystemParams: coil_constant must be set (> 0)");
    require(distance > 0.0, "typical_power: distance must be positive");
    require(load > 0.0, "typical_power: load must be positive");
    require(interference_sum >= 0.0, "typical_power: interference_sum must be >= 0");
    const double w2 = p.angular_frequency * p.angular_frequency;
    const double e2 = p.coil_constant * p.coil_constant;
    const double d3 = distance * distance * distance;
    const double own = alignment * alignment / (d3 * d3);
    const double rx_total = p.rx_resistance + load;
    const double denom = p.tx_resistance + w2 * e2 * (own + interference_sum) / rx_total;
    return p.transmit_power * w2 * e2 * own * load / (rx_total * rx_total) / denom;
}

}  // namespace mrcwpt
