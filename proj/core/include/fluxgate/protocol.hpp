#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fluxgate/dynamics.hpp"
#include "fluxgate/statespace.hpp"

namespace fluxgate {

/// Per-qudit level structure. Level frequencies are absolute, ascending,
/// rad/s; g is the cavity coupling on |2><->|3>.
struct QuditSpec {
    std::array<double, 4> level{};
    double g = 0.0;
    QubitDecoherence decoherence{};
};

struct CavitySpec {
    double nu_c = 0.0;  // Hz (ordinary frequency)
    double quality = 0.0;
    int n_max = 2;

    double omega() const { return 2.0 * M_PI * nu_c; }
    double kappa() const { return 2.0 * M_PI * nu_c / quality; }
};

enum class RunMode { SequentialIdeal, Concurrent, Lindblad };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& s);

struct DeviceConfig {
    QuditSpec qubit1, qubit2;
    CavitySpec cavity;
    double rabi = 0.0;  // global pulse Rabi frequency, rad/s
    /// Optional per-pulse Rabi override, keyed by 1-based segment position.
    std::map<int, double> per_segment_rabi;
    RunMode mode = RunMode::SequentialIdeal;
    std::optional<double> lindblad_dt;  // s; default is tau / 20000
    /// Cavity decay rate override, rad/s; defaults to 2 pi nu_c / Q.
    /// Used by rate-scaling sweeps; never persisted in config files.
    std::optional<double> kappa_override;
    /// Both couplings active during waits (default) or only the stepped qubit's.
    bool wait_couplings_both = true;
    /// Whether cavity couplings stay on during pulse segments. Defaults to
    /// the mode semantics: off in sequential_ideal, on otherwise. Overriding
    /// lets the Lindblad integrator be exercised on the idealized schedule.
    std::optional<bool> couple_during_pulses;
    double resonance_guard = 2.0 * M_PI * 500e6;  // rad/s

    const QuditSpec& qubit(int index) const { return index == 1 ? qubit1 : qubit2; }
};

/// Throws ConfigError naming the violated invariant.
void validate_config(const DeviceConfig& config);

/// One piecewise-constant evolution window of the schedule.
struct ScheduleSegment {
    std::string label;
    double duration = 0.0;  // s
    std::vector<DriveTerm> drives;
    bool couplings_active = false;
    /// Qubit whose wait this segment realizes (waits only; 0 for pulses).
    int wait_qubit = 0;
};

struct ProtocolRun {
    std::vector<ScheduleSegment> segments;
    std::vector<SystemState> checkpoints;  // after segments 3, 6, 9
    SystemState final_state;
    double total_time = 0.0;
};

/// The nine-segment controlled-phase schedule:
/// pulse(1;1-3,-pi/2) wait(pi/2g1) pulse(1;1-2,-pi/2)
/// pulse(2;1-2,-pi/2) wait(pi/g2)  pulse(2;1-2,+pi/2)
/// pulse(1;1-2,-pi/2) wait(pi/2g1) pulse(1;1-3,+pi/2)
std::vector<ScheduleSegment> build_cp_schedule(const DeviceConfig& config);

ProtocolRun run_protocol(const DeviceConfig& config, const SystemState& initial);

/// Default Lindblad step: schedule total time / 20000.
double default_lindblad_dt(const DeviceConfig& config);

}  // namespace fluxgate
