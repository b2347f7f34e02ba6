#pragma once

#include <array>
#include <span>
#include <vector>

#include "fluxgate/protocol.hpp"

namespace fluxgate {

/// Extracted computational-subspace gate and its figures of merit.
/// Rows/columns are ordered |00>, |01>, |10>, |11>, each with the cavity
/// in vacuum.
struct GateReport {
    Eigen::Matrix4cd gate_matrix = Eigen::Matrix4cd::Zero();
    double process_fidelity = 0.0;
    /// Mean state fidelity over the six probe inputs (four basis states,
    /// |+>|+>, and (|00>+|11>)/sqrt(2)); equals process_fidelity in
    /// lindblad mode.
    double probe_fidelity_mean = 0.0;
    double avg_leakage = 0.0;
    std::array<double, 4> column_leakage{};
    double total_time = 0.0;  // s
    RunMode mode = RunMode::SequentialIdeal;
    std::array<double, 3> checkpoint_fidelities{};
};

/// Ideal controlled-phase target diag(1, 1, 1, -1).
Eigen::Matrix4cd cp_target();

/// Runs the protocol on the computational basis (plus superposition probes)
/// and assembles the report.
GateReport extract_gate(const DeviceConfig& config);

/// Phase-invariant process overlap |Tr(M+ U)|^2 / (d Tr(M+ M)), d = 4.
double process_overlap(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& target);

/// Phase-exact target state after step 1, 2 or 3 (step in 1..3) for
/// computational basis input k (0..3, order |00>, |01>, |10>, |11>).
Vector ideal_checkpoint_state(const HilbertLayout& layout, int basis_index,
                              int step);

/// Max elementwise |psi - psi_ideal| over all four basis inputs and all three
/// checkpoints. Global phases count; closed-system modes only.
double max_checkpoint_deviation(const DeviceConfig& config);

/// Max elementwise |M - diag(1,1,1,-1)|.
double max_gate_deviation(const Eigen::Matrix4cd& gate);

/// tau = pi/g1 + pi/g2 + 3 pi/Omega (all angular frequencies).
double total_gate_time(double g1, double g2, double omega);

/// kappa^-1 = Q / (2 pi nu_c), nu_c in Hz.
double cavity_photon_lifetime(double quality, double nu_c);

enum class SweepAxis { OmegaOverG, QualityFactor, GammaScale, GAsymmetry };

SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepRow {
    double value = 0.0;
    double fidelity = 0.0;
    double leakage = 0.0;
    double total_time = 0.0;  // s
};

/// Applies one axis value to a copy of the template config.
DeviceConfig apply_sweep_value(const DeviceConfig& config, SweepAxis axis,
                               double value);

/// One extract_gate per value; rows in input order. jobs <= 0 means one
/// worker per available processor.
std::vector<SweepRow> sweep(const DeviceConfig& config, SweepAxis axis,
                            std::span<const double> values, int jobs = 1);

}  // namespace fluxgate
