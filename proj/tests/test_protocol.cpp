#include <doctest.h>

#include <cmath>

#include "fluxgate/analysis.hpp"
#include "fluxgate/config.hpp"
#include "test_util.hpp"

using namespace fluxgate;

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

TEST_CASE("schedule shape and durations in the worked regime") {
    const DeviceConfig config = paper_config();
    const auto segments = build_cp_schedule(config);

    REQUIRE(segments.size() == 9);
    const std::array<double, 9> expected_ns{5.0 / 6.0, 2.5, 5.0 / 6.0,
                                            5.0 / 6.0, 5.0, 5.0 / 6.0,
                                            5.0 / 6.0, 2.5, 5.0 / 6.0};
    double total = 0.0;
    for (int i = 0; i < 9; ++i) {
        CHECK(segments[i].duration * 1e9 ==
              doctest::Approx(expected_ns[i]).epsilon(1e-12));
        total += segments[i].duration;
        const bool is_wait = (i == 1 || i == 4 || i == 7);
        CHECK(segments[i].drives.size() == (is_wait ? 0u : 1u));
        CHECK((segments[i].wait_qubit != 0) == is_wait);
    }
    CHECK(total * 1e9 == doctest::Approx(15.0).epsilon(1e-12));

    // Pulse layout: transitions and phases follow the three-step recipe.
    CHECK(segments[0].drives[0].upper == 3);
    CHECK(segments[0].drives[0].phase == doctest::Approx(-M_PI / 2));
    CHECK(segments[5].drives[0].phase == doctest::Approx(M_PI / 2));
    CHECK(segments[8].drives[0].upper == 3);
    CHECK(segments[8].drives[0].phase == doctest::Approx(M_PI / 2));
    CHECK(segments[3].drives[0].qubit_index == 2);
}

TEST_CASE("asymmetric couplings change only the wait budget") {
    DeviceConfig config = paper_config();
    config.qubit1.g = kTwoPi * 80e6;
    config.qubit2.g = kTwoPi * 120e6;
    const auto segments = build_cp_schedule(config);
    double total = 0.0;
    for (const auto& s : segments) total += s.duration;
    CHECK(total * 1e9 == doctest::Approx(15.0 + 5.0 / 12.0).epsilon(1e-10));
    CHECK(total == doctest::Approx(total_gate_time(config.qubit1.g,
                                                   config.qubit2.g, config.rabi))
                       .epsilon(1e-12));
}

TEST_CASE("schedule total equals the closed-form time for random parameters") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> g_dist(kTwoPi * 30e6, kTwoPi * 200e6);
    std::uniform_real_distribution<double> o_dist(kTwoPi * 200e6, kTwoPi * 900e6);
    for (int trial = 0; trial < 100; ++trial) {
        DeviceConfig config = paper_config();
        config.qubit1.g = g_dist(rng);
        config.qubit2.g = g_dist(rng);
        config.rabi = o_dist(rng);
        const auto segments = build_cp_schedule(config);
        double total = 0.0;
        for (const auto& s : segments) total += s.duration;
        const double tau =
            total_gate_time(config.qubit1.g, config.qubit2.g, config.rabi);
        CHECK(std::abs(total - tau) <= 1e-12 * tau);
    }
}

TEST_CASE("per-segment Rabi override recomputes the pulse duration") {
    DeviceConfig config = paper_config();
    config.per_segment_rabi[4] = kTwoPi * 600e6;
    const auto segments = build_cp_schedule(config);
    CHECK(segments[3].duration * 1e9 == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
    CHECK(segments[0].duration * 1e9 == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("config validation rejects bad devices") {
    SUBCASE("mismatched |2><->|3> spacings") {
        DeviceConfig config = paper_config();
        config.qubit2.level[3] += kTwoPi * 1e3;  // 1 kHz off on an 3 GHz spacing
        CHECK_THROWS_AS(validate_config(config), ConfigError);
    }
    SUBCASE("cavity off resonance") {
        DeviceConfig config = paper_config();
        config.cavity.nu_c = 2.9e9;
        CHECK_THROWS_AS(validate_config(config), ConfigError);
    }
    SUBCASE("nonpositive parameters") {
        DeviceConfig config = paper_config();
        config.cavity.quality = -10.0;
        CHECK_THROWS_AS(validate_config(config), ConfigError);
        config = paper_config();
        config.qubit1.g = 0.0;
        CHECK_THROWS_AS(validate_config(config), ConfigError);
        config = paper_config();
        config.rabi = -1.0;
        CHECK_THROWS_AS(validate_config(config), ConfigError);
    }
    SUBCASE("non-ascending levels") {
        DeviceConfig config = paper_config();
        std::swap(config.qubit1.level[1], config.qubit1.level[2]);
        CHECK_THROWS_AS(validate_config(config), ConfigError);
    }
}

TEST_CASE("sequential run reproduces the per-step checkpoints") {
    const DeviceConfig config = paper_config();
    const HilbertLayout layout(config.cavity.n_max);
    const Complex i_unit(0.0, 1.0);

    SUBCASE("|1>|0> emits a photon with phase i after step one") {
        const auto run = run_protocol(config, basis_ket(layout, 1, 0, 0));
        const Vector& ckpt = run.checkpoints[0].vec;
        CHECK(std::abs(ckpt(layout.flatten(1, 0, 1)) - i_unit) < 1e-12);
    }

    SUBCASE("|1>|1> picks up -i after step two") {
        const auto run = run_protocol(config, basis_ket(layout, 1, 1, 0));
        CHECK(std::abs(run.checkpoints[0].vec(layout.flatten(1, 1, 1)) - i_unit) <
              1e-12);
        CHECK(std::abs(run.checkpoints[1].vec(layout.flatten(1, 1, 1)) + i_unit) <
              1e-12);
        CHECK(std::abs(run.final_state.vec(layout.flatten(1, 1, 0)) + 1.0) <
              1e-10);
    }

    SUBCASE("control in |0> leaves everything untouched") {
        for (int l2 : {0, 1}) {
            const auto initial = basis_ket(layout, 0, l2, 0);
            const auto run = run_protocol(config, initial);
            for (const auto& ckpt : run.checkpoints)
                CHECK((ckpt.vec - initial.vec).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((run.final_state.vec - initial.vec).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
}

TEST_CASE("idle qubit keeps its reduced state through foreign steps") {
    const DeviceConfig config = paper_config();
    const HilbertLayout layout(config.cavity.n_max);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ph(-M_PI, M_PI);

    for (int trial = 0; trial < 5; ++trial) {
        Vector v = Vector::Zero(layout.total_dim());
        const Complex a = std::exp(Complex(0, ph(rng))) * 0.6;
        const Complex b = std::exp(Complex(0, ph(rng))) * 0.8;
        v(layout.flatten(0, 0, 0)) = a * 0.6;
        v(layout.flatten(0, 1, 0)) = a * 0.8;
        v(layout.flatten(1, 0, 0)) = b * 0.6;
        v(layout.flatten(1, 1, 0)) = b * 0.8;
        const auto initial = SystemState::pure(layout, v);
        const auto run = run_protocol(config, initial);

        const Matrix q2_in = initial.reduced_qudit(2);
        CHECK((run.checkpoints[0].reduced_qudit(2) - q2_in).cwiseAbs().maxCoeff() <
              1e-10);
        const Matrix q1_after1 = run.checkpoints[0].reduced_qudit(1);
        CHECK((run.checkpoints[1].reduced_qudit(1) - q1_after1)
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        const Matrix q2_after2 = run.checkpoints[1].reduced_qudit(2);
        CHECK((run.final_state.reduced_qudit(2) - q2_after2)
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
}

TEST_CASE("cavity returns to vacuum for all computational inputs") {
    const DeviceConfig config = paper_config();
    const HilbertLayout layout(config.cavity.n_max);
    for (int l1 : {0, 1})
        for (int l2 : {0, 1}) {
            const auto run = run_protocol(config, basis_ket(layout, l1, l2, 0));
            CHECK(run.final_state.excited_cavity_population() < 1e-10);
            CHECK(std::abs(run.final_state.vec.norm() - 1.0) < 1e-12);
        }
}

TEST_CASE("protocol is linear over superposition inputs") {
    const DeviceConfig config = paper_config();
    const HilbertLayout layout(config.cavity.n_max);
    std::mt19937 rng(37);

    Vector coeff(4);
    for (int k = 0; k < 4; ++k)
        coeff(k) = Complex(std::normal_distribution<double>()(rng),
                           std::normal_distribution<double>()(rng));
    coeff.normalize();

    Vector superposed = Vector::Zero(layout.total_dim());
    Vector recombined = Vector::Zero(layout.total_dim());
    const std::array<std::array<int, 2>, 4> comp{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    for (int k = 0; k < 4; ++k) {
        const auto basis = basis_ket(layout, comp[k][0], comp[k][1], 0);
        superposed += coeff(k) * basis.vec;
        recombined += coeff(k) * run_protocol(config, basis).final_state.vec;
    }
    const auto direct =
        run_protocol(config, SystemState::pure(layout, superposed)).final_state;
    CHECK((direct.vec - recombined).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("restricting waits to the active coupling changes nothing ideal") {
    DeviceConfig config = paper_config();
    config.wait_couplings_both = false;
    const HilbertLayout layout(config.cavity.n_max);
    const auto run = run_protocol(config, basis_ket(layout, 1, 1, 0));
    CHECK(std::abs(run.final_state.vec(layout.flatten(1, 1, 0)) + 1.0) < 1e-10);
}

TEST_CASE("run_protocol rejects a mismatched initial layout") {
    const DeviceConfig config = paper_config();  // n_max = 2
    const HilbertLayout other(1);
    CHECK_THROWS_AS(run_protocol(config, basis_ket(other, 0, 0, 0)),
                    DimensionError);
}
