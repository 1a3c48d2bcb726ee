#include <cmath>
#include <random>

#include <doctest.h>

#include "mrcwpt/circuit.hpp"

using namespace mrcwpt;

namespace {

SystemParams reference_params() {
    SystemParams p;
    p.transmit_power = 10.0;
    p.angular_frequency = 1.42e7;
    p.tx_resistance = 1.3440;
    p.rx_resistance = 0.0672;
    p.coil_constant = coil_constant(CoilGeometry{});
    return p;
}

}  // namespace

TEST_CASE("coil constant of the reference geometry") {
    // e = pi mu0 N A^2 n a^2 / 4 with N=200, A=0.2, n=10, a=0.05
    CHECK(coil_constant(CoilGeometry{}) ==
          doctest::Approx(1.9739208802178717e-7).epsilon(1e-15));

    CoilGeometry g;
    g.tx_turns = 400;  // e is linear in each turn count
    CHECK(coil_constant(g) == doctest::Approx(2.0 * 1.9739208802178717e-7).epsilon(1e-15));
    g = CoilGeometry{};
    g.tx_radius = 0.4;  // and quadratic in the tx loop radius
    CHECK(coil_constant(g) == doctest::Approx(4.0 * 1.9739208802178717e-7).epsilon(1e-15));
}

TEST_CASE("alignment factor at the axial configurations") {
    CHECK(alignment_factor(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(alignment_factor(M_PI / 2.0, M_PI / 2.0) == doctest::Approx(2.0));
    CHECK(alignment_factor(0.0, M_PI / 2.0) == doctest::Approx(0.0).epsilon(1e-15));
    // |I| <= 2 over a coarse grid
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            CHECK(std::abs(alignment_factor(a * M_PI / 8.0, b * M_PI / 8.0)) <= 2.0 + 1e-12);
}

TEST_CASE("alignment factor symmetry: flipping both coils changes nothing") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (int k = 0; k < 50; ++k) {
        const double t = u(rng), i = u(rng);
        CHECK(alignment_factor(t + M_PI, i + M_PI) == doctest::Approx(alignment_factor(t, i)));
        CHECK(alignment_factor(t, i + M_PI) == doctest::Approx(-alignment_factor(t, i)));
    }
}

TEST_CASE("mutual inductance follows the e*I/d^3 law") {
    const double e = coil_constant(CoilGeometry{});
    CHECK(mutual_inductance(e, 1.0, 1.5) == doctest::Approx(e / 3.375).epsilon(1e-15));
    CHECK(mutual_inductance(e, 1.0, 1.5) == doctest::Approx(5.8486544598e-8).epsilon(1e-10));
    CHECK(mutual_inductance(e, 2.0, 3.0) == doctest::Approx(2.0 * e / 27.0).epsilon(1e-15));
    CHECK(mutual_inductance(e, -1.0, 1.0) == doctest::Approx(-e));
    CHECK_THROWS(mutual_inductance(e, 1.0, 0.0));
}

TEST_CASE("harvested power: dissipation never exceeds the transmit budget") {
    SystemParams p = reference_params();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uM(-1e-7, 1e-7), ux(0.01, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        NetworkInstance net;
        const int K = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < K; ++i) net.receivers.push_back({uM(rng), ux(rng)});
        double total = 0.0;
        for (int i = 0; i < K; ++i)
            total += harvested_power(p, net, static_cast<std::size_t>(i));
        CHECK(total < p.transmit_power);
        CHECK(total >= 0.0);
    }
}

TEST_CASE("harvested power is invariant to the sign of any mutual inductance") {
    SystemParams p = reference_params();
    NetworkInstance net;
    net.receivers = {{5e-8, 0.5}, {-3e-8, 1.0}, {2e-8, 2.0}};
    const double base = harvested_power(p, net, 0);
    net.receivers[0].mutual_inductance *= -1.0;
    net.receivers[1].mutual_inductance *= -1.0;
    CHECK(harvested_power(p, net, 0) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("harvested power scales linearly with transmit power") {
    SystemParams p = reference_params();
    NetworkInstance net;
    net.receivers = {{5e-8, 0.5}, {3e-8, 1.0}};
    const double base = harvested_power(p, net, 1);
    p.transmit_power *= 7.0;
    CHECK(harvested_power(p, net, 1) == doctest::Approx(7.0 * base).epsilon(1e-14));
}

TEST_CASE("loose-coupling formula is the vanishing-coupling limit of the full one") {
    SystemParams p = reference_params();
    const double w2 = p.angular_frequency * p.angular_frequency;
    for (double scale : {1.0, 1e-2, 1e-4}) {
        NetworkInstance net;
        net.receivers = {{5e-8 * scale, 0.8}, {3e-8 * scale, 1.7}};
        const double full = harvested_power(p, net, 0);
        const double loose = harvested_power_loose(p, net.receivers[0].mutual_inductance,
                                                   net.receivers[0].load);
        // full = loose / (1 + fb) with fb the coupling feedback on the tx coil
        double fb = 0.0;
        for (const auto& rx : net.receivers)
            fb += w2 * rx.mutual_inductance * rx.mutual_inductance /
                  (p.rx_resistance + rx.load);
        fb /= p.tx_resistance;
        CHECK(full == doctest::Approx(loose / (1.0 + fb)).epsilon(1e-13));
        CHECK(full <= loose);  // feedback only ever reduces the harvest
    }
}

TEST_CASE("typical-receiver power equals the network formula at a shared load") {
    SystemParams p = reference_params();
    const double e = p.coil_constant;
    const double I0 = 1.3, d0 = 1.7, x = 0.9;

    // interferers with known alignments/distances, all at load x
    const double Ii[] = {0.4, -1.1, 1.9};
    const double di[] = {1.1, 2.4, 4.0};
    NetworkInstance net;
    net.receivers.push_back({mutual_inductance(e, I0, d0), x});
    double S = 0.0;
    for (int k = 0; k < 3; ++k) {
        net.receivers.push_back({mutual_inductance(e, Ii[k], di[k]), x});
        S += Ii[k] * Ii[k] / std::pow(di[k], 6.0);
    }
    CHECK(typical_power(p, I0, d0, x, S) ==
          doctest::Approx(harvested_power(p, net, 0)).epsilon(1e-13));
    // no interferers: S = 0 degenerates to the single-receiver network
    NetworkInstance solo;
    solo.receivers = {{mutual_inductance(e, I0, d0), x}};
    CHECK(typical_power(p, I0, d0, x, 0.0) ==
          doctest::Approx(harvested_power(p, solo, 0)).epsilon(1e-13));
}

TEST_CASE("typical-receiver power decreases in the interference sum") {
    SystemParams p = reference_params();
    double prev = typical_power(p, 1.0, 1.5, 2.0, 0.0);
    for (double S : {0.01, 0.1, 1.0, 10.0}) {
        const double cur = typical_power(p, 1.0, 1.5, 2.0, S);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("parameter validation rejects unphysical inputs") {
    SystemParams p = reference_params();
    NetworkInstance net;
    net.receivers = {{5e-8, 0.5}};

    SystemParams bad = p;
    bad.angular_frequency = 0.0;
    CHECK_THROWS(harvested_power(bad, net, 0));
    bad = p;
    bad.tx_resistance = -1.0;
    CHECK_THROWS(harvested_power(bad, net, 0));
    bad = p;
    bad.transmit_power = -2.0;
    CHECK_THROWS(harvested_power(bad, net, 0));
    CHECK_THROWS(harvested_power(p, net, 1));  // index out of range
    NetworkInstance badnet;
    badnet.receivers = {{5e-8, -0.5}};
    CHECK_THROWS(harvested_power(p, badnet, 0));

    bad = p;
    bad.power_threshold = 0.0;
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.load_min = 3.0;
    bad.load_max = 1.0;
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.coil_constant = 0.0;
    CHECK_THROWS(typical_power(bad, 1.0, 1.5, 2.0, 0.0));
}
