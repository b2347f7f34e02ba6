#include <doctest.h>

#include <cmath>

#include "fluxgate/analysis.hpp"
#include "fluxgate/config.hpp"
#include "test_util.hpp"

using namespace fluxgate;

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

TEST_CASE("controlled-phase target") {
    const Eigen::Matrix4cd u = cp_target();
    CHECK(u(0, 0) == Complex(1.0));
    CHECK(u(3, 3) == Complex(-1.0));
    CHECK((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("ideal gate extraction") {
    const GateReport report = extract_gate(paper_config());
    CHECK(max_gate_deviation(report.gate_matrix) <= 1e-10);
    CHECK(report.process_fidelity >= 1.0 - 1e-10);
    CHECK(report.avg_leakage <= 1e-10);
    CHECK(report.total_time * 1e9 == doctest::Approx(15.0).epsilon(1e-9));
    for (double f : report.checkpoint_fidelities) CHECK(f >= 1.0 - 1e-10);
    for (double l : report.column_leakage) CHECK(l <= 1e-10);

    // Basis-complete: unitary within 1e-9, unit columns within 1e-10.
    const Eigen::Matrix4cd& m = report.gate_matrix;
    CHECK((m.adjoint() * m - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
          1e-9);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(m.col(k).norm() - 1.0) < 1e-10);
}

TEST_CASE("ideal fidelity is independent of coupling asymmetry") {
    for (const auto [g1_mhz, g2_mhz] : {std::pair{80.0, 120.0},
                                        std::pair{120.0, 80.0}}) {
        DeviceConfig config = paper_config();
        config.qubit1.g = kTwoPi * g1_mhz * 1e6;
        config.qubit2.g = kTwoPi * g2_mhz * 1e6;
        const GateReport report = extract_gate(config);
        CHECK(report.process_fidelity >= 1.0 - 1e-10);
        CHECK(max_gate_deviation(report.gate_matrix) <= 1e-10);
    }
}

TEST_CASE("process overlap is global-phase invariant") {
    std::mt19937 rng(41);
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m(r, c) = Complex(std::normal_distribution<double>()(rng),
                              std::normal_distribution<double>()(rng));
    const double base = process_overlap(m, cp_target());
    for (const double theta : {M_PI / 7.0, 1.0}) {
        const Eigen::Matrix4cd rotated = std::exp(Complex(0, theta)) * m;
        CHECK(std::abs(process_overlap(rotated, cp_target()) - base) < 1e-12);
    }
}

TEST_CASE("total gate time closed form") {
    const double g100 = kTwoPi * 100e6, o300 = kTwoPi * 300e6;
    CHECK(total_gate_time(g100, g100, o300) * 1e9 ==
          doctest::Approx(15.0).epsilon(1e-12));
    CHECK(total_gate_time(o300, o300, o300) ==
          doctest::Approx(5.0 * M_PI / o300).epsilon(1e-12));
    CHECK(total_gate_time(kTwoPi * 80e6, kTwoPi * 120e6, o300) * 1e9 ==
          doctest::Approx(15.0 + 5.0 / 12.0).epsilon(1e-9));
    CHECK_THROWS_AS(total_gate_time(0.0, g100, o300), DomainError);
    CHECK_THROWS_AS(total_gate_time(g100, -1.0, o300), DomainError);
}

TEST_CASE("cavity photon lifetime") {
    CHECK(cavity_photon_lifetime(1e4, 3e9) * 1e9 ==
          doctest::Approx(530.5).epsilon(0.002));
    CHECK(cavity_photon_lifetime(1e6, 3e9) * 1e6 ==
          doctest::Approx(53.05).epsilon(0.002));
    CHECK(cavity_photon_lifetime(1e4, 6e9) ==
          doctest::Approx(0.5 * cavity_photon_lifetime(1e4, 3e9)).epsilon(1e-12));
    CHECK_THROWS_AS(cavity_photon_lifetime(-1.0, 3e9), DomainError);
    CHECK_THROWS_AS(cavity_photon_lifetime(1e4, 0.0), DomainError);
}

TEST_CASE("omega/g sweep fidelity rises toward the decoupled limit") {
    DeviceConfig config = paper_config();
    config.mode = RunMode::Concurrent;
    const std::array<double, 4> values{3.0, 10.0, 30.0, 100.0};
    const auto rows = sweep(config, SweepAxis::OmegaOverG, values, 1);
    REQUIRE(rows.size() == 4);
    for (int i = 1; i < 4; ++i) CHECK(rows[i].fidelity > rows[i - 1].fidelity);
    CHECK(rows[3].fidelity > 0.999);
    for (int i = 0; i < 4; ++i) CHECK(rows[i].value == values[i]);
}

TEST_CASE("gamma_scale zero reproduces closed concurrent dynamics") {
    DeviceConfig config = paper_config();
    config.cavity.n_max = 1;
    config.qubit1.decoherence.decay = {1e6, 1e6, 1e6};

    DeviceConfig lind = apply_sweep_value(config, SweepAxis::GammaScale, 0.0);
    lind.mode = RunMode::Lindblad;
    const GateReport open = extract_gate(lind);

    DeviceConfig closed = config;
    closed.mode = RunMode::Concurrent;
    const GateReport reference = extract_gate(closed);

    CHECK(std::abs(open.probe_fidelity_mean - reference.probe_fidelity_mean) <
          1e-6);
}

TEST_CASE("fidelity increases with cavity quality factor") {
    DeviceConfig config = paper_config();
    config.mode = RunMode::Lindblad;
    config.cavity.n_max = 1;
    config.lindblad_dt = 15e-9 / 4000.0;
    const std::array<double, 3> values{1e3, 1e4, 1e5};
    const auto rows = sweep(config, SweepAxis::QualityFactor, values, 1);
    CHECK(rows[1].fidelity > rows[0].fidelity);
    CHECK(rows[2].fidelity > rows[1].fidelity);
}

TEST_CASE("g_asymmetry sweep keeps the ideal gate exact") {
    const std::array<double, 3> values{0.5, 1.0, 2.0};
    const auto rows = sweep(paper_config(), SweepAxis::GAsymmetry, values, 1);
    for (const auto& r : rows) CHECK(r.fidelity >= 1.0 - 1e-10);
}

TEST_CASE("sweep argument validation") {
    CHECK_THROWS_AS(sweep_axis_from_string("nope"), ConfigError);
    CHECK_THROWS_AS(sweep(paper_config(), SweepAxis::QualityFactor, {}, 1),
                    ConfigError);
    CHECK_THROWS_AS(
        apply_sweep_value(paper_config(), SweepAxis::OmegaOverG, -1.0),
        ConfigError);
}

TEST_CASE("sweep worker pool preserves input order") {
    DeviceConfig config = paper_config();
    config.mode = RunMode::Concurrent;
    const std::array<double, 5> values{4.0, 11.0, 7.0, 25.0, 5.0};
    const auto serial = sweep(config, SweepAxis::OmegaOverG, values, 1);
    const auto parallel = sweep(config, SweepAxis::OmegaOverG, values, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].value == parallel[i].value);
        CHECK(serial[i].fidelity == doctest::Approx(parallel[i].fidelity)
                                        .epsilon(1e-14));
    }
}
