#include "fluxgate/protocol.hpp"

#include <cmath>

namespace fluxgate {

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::SequentialIdeal: return "sequential_ideal";
        case RunMode::Concurrent: return "concurrent";
        case RunMode::Lindblad: return "lindblad";
    }
    return "unknown";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "sequential_ideal") return RunMode::SequentialIdeal;
    if (s == "concurrent") return RunMode::Concurrent;
    if (s == "lindblad") return RunMode::Lindblad;
    throw ConfigError("unknown run mode '" + s +
                      "' (expected sequential_ideal, concurrent, or lindblad)");
}

namespace {

double spacing(const QuditSpec& q, int i, int j) { return q.level[j] - q.level[i]; }

DriveTerm make_drive(const DeviceConfig& config, int qubit, int i, int j,
                     double rabi, double phase) {
    DriveTerm d;
    d.qubit_index = qubit;
    d.lower = i;
    d.upper = j;
    d.rabi = rabi;
    d.phase = phase;
    d.carrier = spacing(config.qubit(qubit), i, j);
    return d;
}

double segment_rabi(const DeviceConfig& config, int position) {
    if (auto it = config.per_segment_rabi.find(position);
        it != config.per_segment_rabi.end()) {
        if (it->second <= 0.0)
            throw ConfigError("per-segment Rabi override must be positive");
        return it->second;
    }
    return config.rabi;
}

}  // namespace

void validate_config(const DeviceConfig& config) {
    for (int q = 1; q <= 2; ++q) {
        const auto& spec = config.qubit(q);
        for (int l = 1; l < kLevels; ++l)
            if (spec.level[l] <= spec.level[l - 1])
                throw ConfigError("qubit " + std::to_string(q) +
                                  ": level frequencies must be strictly ascending");
        if (spec.g <= 0.0)
            throw ConfigError("qubit " + std::to_string(q) + ": g must be positive");
        for (double r : spec.decoherence.decay)
            if (r < 0.0) throw ConfigError("decay rates must be >= 0");
        for (double r : spec.decoherence.dephase)
            if (r < 0.0) throw ConfigError("dephasing rates must be >= 0");
    }
    if (config.rabi <= 0.0) throw ConfigError("pulse Rabi frequency must be positive");
    if (config.cavity.nu_c <= 0.0) throw ConfigError("cavity frequency must be positive");
    if (config.cavity.quality <= 0.0) throw ConfigError("cavity Q must be positive");
    if (config.cavity.n_max < 1) throw ConfigError("cavity n_max must be >= 1");

    const double s1 = spacing(config.qubit1, 2, 3);
    const double s2 = spacing(config.qubit2, 2, 3);
    if (std::abs(s1 - s2) > 1e-9 * s1)
        throw ConfigError("qubit |2><->|3> spacings differ by " +
                          std::to_string(std::abs(s1 - s2) / s1) +
                          " relative; limit 1e-9");
    if (std::abs(config.cavity.omega() - s1) > 1e-9 * s1)
        throw ConfigError("cavity is off resonance with the |2><->|3> transition (" +
                          std::to_string(std::abs(config.cavity.omega() - s1) / s1) +
                          " relative; limit 1e-9)");

    // Static stand-in for the decoupling conditions: every pulse the schedule
    // uses must clear the guard band against all other spacings of its qudit.
    for (int q = 1; q <= 2; ++q) {
        const auto& spec = config.qubit(q);
        validate_drive_resonance(spec.level,
                                 make_drive(config, q, 1, 2, config.rabi, 0.0),
                                 config.resonance_guard);
        if (q == 1)
            validate_drive_resonance(spec.level,
                                     make_drive(config, q, 1, 3, config.rabi, 0.0),
                                     config.resonance_guard);
        // Cavity must likewise only address |2><->|3>.
        for (int i = 0; i < kLevels; ++i)
            for (int j = i + 1; j < kLevels; ++j) {
                if (i == 2 && j == 3) continue;
                if (std::abs(spacing(spec, i, j) - config.cavity.omega()) <
                    config.resonance_guard)
                    throw ConfigError("cavity frequency collides with the (" +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      ") spacing of qubit " + std::to_string(q));
            }
    }
}

std::vector<ScheduleSegment> build_cp_schedule(const DeviceConfig& config) {
    validate_config(config);

    const double g1 = config.qubit1.g;
    const double g2 = config.qubit2.g;
    const bool couple_pulses =
        config.couple_during_pulses.value_or(config.mode != RunMode::SequentialIdeal);
    const double half_pi = M_PI / 2.0;

    std::vector<ScheduleSegment> segments;
    segments.reserve(9);

    auto pulse = [&](int position, const char* label, int qubit, int i, int j,
                     double phase) {
        const double rabi = segment_rabi(config, position);
        ScheduleSegment s;
        s.label = label;
        s.duration = M_PI / (2.0 * rabi);
        s.drives = {make_drive(config, qubit, i, j, rabi, phase)};
        s.couplings_active = couple_pulses;
        segments.push_back(std::move(s));
    };
    auto wait = [&](const char* label, int qubit, double duration) {
        ScheduleSegment s;
        s.label = label;
        s.duration = duration;
        s.couplings_active = true;
        s.wait_qubit = qubit;
        segments.push_back(std::move(s));
    };

    pulse(1, "step1.pulse_a", 1, 1, 3, -half_pi);
    wait("step1.wait_b", 1, M_PI / (2.0 * g1));
    pulse(3, "step1.pulse_c", 1, 1, 2, -half_pi);
    pulse(4, "step2.pulse_a", 2, 1, 2, -half_pi);
    wait("step2.wait_b", 2, M_PI / g2);
    pulse(6, "step2.pulse_c", 2, 1, 2, half_pi);
    pulse(7, "step3.pulse_a", 1, 1, 2, -half_pi);
    wait("step3.wait_b", 1, M_PI / (2.0 * g1));
    pulse(9, "step3.pulse_c", 1, 1, 3, half_pi);

    return segments;
}

double default_lindblad_dt(const DeviceConfig& config) {
    const double tau = M_PI / config.qubit1.g + M_PI / config.qubit2.g +
                       3.0 * M_PI / config.rabi;
    return tau / 20000.0;
}

ProtocolRun run_protocol(const DeviceConfig& config, const SystemState& initial) {
    const auto segments = build_cp_schedule(config);
    const HilbertLayout layout(config.cavity.n_max);
    if (initial.layout != layout)
        throw DimensionError("run_protocol: initial state layout does not match config");

    const bool open_system = config.mode == RunMode::Lindblad;
    DecoherenceSpec deco;
    std::vector<CollapseOp> collapse;
    double dt = 0.0;
    if (open_system) {
        deco.qubit = {config.qubit1.decoherence, config.qubit2.decoherence};
        deco.kappa = config.kappa_override.value_or(config.cavity.kappa());
        collapse = collapse_operators(layout, deco);
        dt = config.lindblad_dt.value_or(default_lindblad_dt(config));
    }

    SystemState state = open_system ? initial.to_density() : initial;

    ProtocolRun run;
    run.segments = segments;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const auto& seg = segments[k];
        std::vector<CouplingTerm> couplings;
        if (seg.couplings_active) {
            if (seg.wait_qubit != 0 && !config.wait_couplings_both) {
                couplings.push_back({seg.wait_qubit, config.qubit(seg.wait_qubit).g});
            } else {
                couplings.push_back({1, config.qubit1.g});
                couplings.push_back({2, config.qubit2.g});
            }
        }
        const OperatorMatrix h = build_hamiltonian(layout, couplings, seg.drives);
        state = open_system
                    ? propagate_lindblad(h, collapse, seg.duration, dt, state)
                    : propagate_unitary(h, seg.duration, state);
        run.total_time += seg.duration;
        if (k == 2 || k == 5 || k == 8) run.checkpoints.push_back(state);
    }
    run.final_state = std::move(state);
    return run;
}

}  // namespace fluxgate
