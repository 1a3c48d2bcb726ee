/// Python bindings for the core operations: circuit formulas, outage
/// analytics, Monte Carlo estimators, and the load-adjustment game.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mrcwpt/experiments.hpp"

namespace py = pybind11;
using namespace mrcwpt;

PYBIND11_MODULE(_core, m) {
    m.doc() = "magnetic-resonant wireless power transfer: analytics and simulation";

    py::register_exception<QuadratureError>(m, "QuadratureError");

    py::class_<CoilGeometry>(m, "CoilGeometry")
        .def(py::init<>())
        .def_readwrite("tx_turns", &CoilGeometry::tx_turns)
        .def_readwrite("tx_radius", &CoilGeometry::tx_radius)
        .def_readwrite("rx_turns", &CoilGeometry::rx_turns)
        .def_readwrite("rx_radius", &CoilGeometry::rx_radius)
        .def_readwrite("permeability", &CoilGeometry::permeability);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("transmit_power", &SystemParams::transmit_power)
        .def_readwrite("angular_frequency", &SystemParams::angular_frequency)
        .def_readwrite("tx_resistance", &SystemParams::tx_resistance)
        .def_readwrite("rx_resistance", &SystemParams::rx_resistance)
        .def_readwrite("coil_constant", &SystemParams::coil_constant)
        .def_readwrite("cell_radius", &SystemParams::cell_radius)
        .def_readwrite("density", &SystemParams::density)
        .def_readwrite("power_threshold", &SystemParams::power_threshold)
        .def_readwrite("load_min", &SystemParams::load_min)
        .def_readwrite("load_max", &SystemParams::load_max);

    py::class_<Receiver>(m, "Receiver")
        .def(py::init<>())
        .def(py::init([](double mutual, double load) {
                 return Receiver{mutual, load};
             }),
             py::arg("mutual_inductance"), py::arg("load"))
        .def_readwrite("mutual_inductance", &Receiver::mutual_inductance)
        .def_readwrite("load", &Receiver::load);

    py::class_<NetworkInstance>(m, "NetworkInstance")
        .def(py::init<>())
        .def_readwrite("receivers", &NetworkInstance::receivers);

    py::class_<OutageQuery>(m, "OutageQuery")
        .def(py::init<>())
        .def_readwrite("threshold", &OutageQuery::threshold)
        .def_readwrite("typical_alignment", &OutageQuery::typical_alignment)
        .def_readwrite("typical_distance", &OutageQuery::typical_distance)
        .def_readwrite("common_load", &OutageQuery::common_load);

    py::enum_<InnerMethod>(m, "InnerMethod")
        .value("IncompleteGamma", InnerMethod::IncompleteGamma)
        .value("ZeroPartition", InnerMethod::ZeroPartition);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("outer_abs_tol", &QuadratureConfig::outer_abs_tol)
        .def_readwrite("inner_rel_tol", &QuadratureConfig::inner_rel_tol)
        .def_readwrite("max_intervals", &QuadratureConfig::max_intervals)
        .def_readwrite("min_intervals", &QuadratureConfig::min_intervals)
        .def_readwrite("inner_method", &QuadratureConfig::inner_method)
        .def_readwrite("accelerate", &QuadratureConfig::accelerate);

    py::class_<OutageResult>(m, "OutageResult")
        .def_readonly("probability", &OutageResult::probability)
        .def_readonly("est_error", &OutageResult::est_error)
        .def_readonly("feasible", &OutageResult::feasible)
        .def_readonly("intervals_used", &OutageResult::intervals_used)
        .def_readonly("clamped", &OutageResult::clamped);

    py::enum_<AlignmentRule>(m, "AlignmentRule")
        .value("AdaptiveKronrod", AlignmentRule::AdaptiveKronrod)
        .value("GaussLegendre", AlignmentRule::GaussLegendre);

    py::enum_<AngleMode>(m, "AngleMode")
        .value("ExactRandom", AngleMode::ExactRandom)
        .value("UnitAlignment", AngleMode::UnitAlignment);

    py::enum_<TypicalMode>(m, "TypicalMode")
        .value("FixedTypical", TypicalMode::FixedTypical)
        .value("UniformDisk", TypicalMode::UniformDisk);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("trials", &SimConfig::trials)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("angle_mode", &SimConfig::angle_mode)
        .def_readwrite("typical_mode", &SimConfig::typical_mode)
        .def_readwrite("block_size", &SimConfig::block_size)
        .def_readwrite("threads", &SimConfig::threads);

    py::class_<SimEstimate>(m, "SimEstimate")
        .def_readonly("mean", &SimEstimate::mean)
        .def_readonly("standard_error", &SimEstimate::standard_error)
        .def_readonly("trials", &SimEstimate::trials);

    py::class_<CharFnEstimate>(m, "CharFnEstimate")
        .def_readonly("mean", &CharFnEstimate::mean)
        .def_readonly("se_real", &CharFnEstimate::se_real)
        .def_readonly("se_imag", &CharFnEstimate::se_imag)
        .def_readonly("trials", &CharFnEstimate::trials);

    py::enum_<UpdateOrder>(m, "UpdateOrder")
        .value("Sequential", UpdateOrder::Sequential)
        .value("Simultaneous", UpdateOrder::Simultaneous);

    py::class_<GameSpec>(m, "GameSpec")
        .def(py::init<>())
        .def_readwrite("mutual_inductances", &GameSpec::mutual_inductances)
        .def_readwrite("params", &GameSpec::params)
        .def_readwrite("tolerance", &GameSpec::tolerance)
        .def_readwrite("max_sweeps", &GameSpec::max_sweeps)
        .def_readwrite("order", &GameSpec::order);

    py::class_<EquilibriumResult>(m, "EquilibriumResult")
        .def_readonly("loads", &EquilibriumResult::loads)
        .def_readonly("utilities", &EquilibriumResult::utilities)
        .def_readonly("sweeps", &EquilibriumResult::sweeps)
        .def_readonly("converged", &EquilibriumResult::converged)
        .def_readonly("residuals", &EquilibriumResult::residuals);

    // circuit
    m.def("coil_constant", &coil_constant, py::arg("geometry"));
    m.def("alignment_factor", &alignment_factor, py::arg("theta_t"), py::arg("theta_i"));
    m.def("mutual_inductance", &mutual_inductance, py::arg("coil_const"), py::arg("alignment"),
          py::arg("distance"));
    m.def("harvested_power", &harvested_power, py::arg("params"), py::arg("network"),
          py::arg("index"));
    m.def("harvested_power_loose", &harvested_power_loose, py::arg("params"), py::arg("mutual"),
          py::arg("load"));
    m.def("typical_power", &typical_power, py::arg("params"), py::arg("alignment"),
          py::arg("distance"), py::arg("load"), py::arg("interference_sum"));

    // stochastic geometry
    m.def("characteristic_fn_S", &characteristic_fn_S, py::arg("t"), py::arg("density"),
          py::arg("cell_radius"), py::arg("quad") = QuadratureConfig{});
    m.def("distance_cdf", &distance_cdf, py::arg("x"), py::arg("cell_radius"));
    m.def("expected_abs_alignment", &expected_abs_alignment,
          py::arg("rule") = AlignmentRule::AdaptiveKronrod);
    m.def("lambda_threshold", &lambda_threshold, py::arg("params"), py::arg("query"));
    m.def("outage_strong", &outage_strong, py::arg("params"), py::arg("query"),
          py::arg("quad") = QuadratureConfig{});
    m.def("outage_loose", &outage_loose, py::arg("params"), py::arg("query"));
    m.def("min_power_zero_outage", &min_power_zero_outage, py::arg("params"), py::arg("query"));

    // Monte Carlo
    m.def("simulate_outage_strong", &simulate_outage_strong, py::arg("params"), py::arg("query"),
          py::arg("sim") = SimConfig{});
    m.def("simulate_outage_loose", &simulate_outage_loose, py::arg("params"), py::arg("query"),
          py::arg("sim") = SimConfig{});
    m.def("empirical_char_fn", &empirical_char_fn, py::arg("t"), py::arg("density"),
          py::arg("cell_radius"), py::arg("sim") = SimConfig{});

    // game
    m.def(
        "utility",
        [](const GameSpec& g, std::size_t i, const std::vector<double>& loads) {
            return utility(g, i, loads);
        },
        py::arg("game"), py::arg("index"), py::arg("loads"));
    m.def(
        "utility_derivative",
        [](const GameSpec& g, std::size_t i, const std::vector<double>& loads) {
            return utility_derivative(g, i, loads);
        },
        py::arg("game"), py::arg("index"), py::arg("loads"));
    m.def(
        "best_response",
        [](const GameSpec& g, std::size_t i, const std::vector<double>& loads) {
            return best_response(g, i, loads);
        },
        py::arg("game"), py::arg("index"), py::arg("loads"));
    m.def("solve_equilibrium", &solve_equilibrium, py::arg("game"),
          py::arg("initial") = std::vector<double>{});
    m.def("symmetric_limit_power", &symmetric_limit_power, py::arg("receivers"),
          py::arg("transmit_power"), py::arg("epsilon"));

    // calibration helpers
    m.def("calibrate_omega", &experiments::calibrate_omega, py::arg("anchor_watts"),
          py::arg("query"), py::arg("params"));
    m.def("dbw_to_watts", &experiments::dbw_to_watts, py::arg("dbw"));
    m.def("watts_to_dbw", &experiments::watts_to_dbw, py::arg("watts"));
}
