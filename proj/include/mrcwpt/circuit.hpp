#pragma once

#include <cstddef>
#include <vector>

namespace mrcwpt {

/// Transmitter/receiver coil dimensions used to derive the coupling constant.
struct CoilGeometry {
    int tx_turns = 200;
    double tx_radius = 0.20;          // m
    int rx_turns = 10;
    double rx_radius = 0.05;          // m
    double permeability = 1.2566370614359173e-6;  // free space, H/m

    void validate() const;
};

/// Cell-level physical parameters shared by every operation.
/// `coil_constant` is the geometry factor e with M = e * I / d^3.
struct SystemParams {
    double transmit_power = 0.0;      // W
    double angular_frequency = 0.0;   // rad/s, must be set explicitly
    double tx_resistance = 1.3440;    // ohm
    double rx_resistance = 0.0672;    // ohm
    double coil_constant = 0.0;       // H m^3, must be set explicitly
    double cell_radius = 5.0;         // m
    double density = 0.1;             // receivers / m^2
    double power_threshold = 0.1;     // W
    double load_min = 0.01;           // ohm
    double load_max = 5.0;            // ohm

    void validate() const;
};

/// One receiver as seen by the power-transfer formulas.
struct Receiver {
    double mutual_inductance = 0.0;   // H (sign irrelevant, enters squared)
    double load = 0.0;                // ohm
};

/// A geometrically placed receiver: distance and orientation relative to the
/// transmitter, with the derived alignment factor and mutual inductance.
struct ReceiverPlacement {
    double distance = 0.0;           // m, > 0
    double rx_angle = 0.0;           // theta_i, radians
    double alignment = 1.0;          // I, in [-2, 2]
    double mutual_inductance = 0.0;  // e * I / d^3 when derived from geometry
};

/// A fixed, finite receiver population.
struct NetworkInstance {
    std::vector<Receiver> receivers;

    void validate() const;
};

/// Geometry factor e = pi * mu0 * N * A^2 * n * a^2 / 4.
double coil_constant(const CoilGeometry& g);

/// Orientation factor I = 2 sin(theta_t) sin(theta_i) + cos(theta_t) cos(theta_i).
double alignment_factor(double theta_t, double theta_i);

/// M = e * I / d^3; requires d > 0.
double mutual_inductance(double coil_const, double alignment, double distance);

/// Exact harvested power at receiver i:
///   p_i = P w^2 M_i^2 x_i (r+x_i)^{-2} / (R + w^2 sum_k M_k^2 / (r+x_k)).
double harvested_power(const SystemParams& p, const NetworkInstance& net, std::size_t i);

/// Loose-coupling limit of the same quantity (reflected impedances dropped):
///   p_i = P w^2 M_i^2 x_i / (R (r+x_i)^2).
double harvested_power_loose(const SystemParams& p, double mutual, double load);

/// Harvested power at a typical receiver described by (alignment, distance)
/// against an aggregate interference sum S = sum_k I_k^2 / d_k^6 over the
/// other receivers; every receiver (typical included) carries load x:
///   p_0 = P w^2 M_0^2 x (r+x)^{-2} / (R + w^2 e^2 (r+x)^{-1} (I_0^2/d_0^6 + S))
/// with M_0 = e * I_0 / d_0^3.
double typical_power(const SystemParams& p, double alignment, double distance, double load,
                     double interference_sum);

}  // namespace mrcwpt
