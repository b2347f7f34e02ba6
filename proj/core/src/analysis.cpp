#include "fluxgate/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace fluxgate {

Eigen::Matrix4cd cp_target() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(3, 3) = -1.0;
    return u;
}

double process_overlap(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& target) {
    const double denom = (m.adjoint() * m).trace().real();
    if (denom <= 0.0) return 0.0;
    return std::norm((m.adjoint() * target).trace()) / (4.0 * denom);
}

double total_gate_time(double g1, double g2, double omega) {
    if (g1 <= 0.0 || g2 <= 0.0 || omega <= 0.0)
        throw DomainError("total_gate_time: g1, g2, omega must be positive");
    return M_PI / g1 + M_PI / g2 + 3.0 * M_PI / omega;
}

double cavity_photon_lifetime(double quality, double nu_c) {
    if (quality <= 0.0 || nu_c <= 0.0)
        throw DomainError("cavity_photon_lifetime: Q and nu_c must be positive");
    return quality / (2.0 * M_PI * nu_c);
}

namespace {

// Computational basis tuples in report order |00>, |01>, |10>, |11>.
constexpr std::array<std::array<int, 2>, 4> kCompBasis{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

Vector comp_vector(const HilbertLayout& layout,
                   const std::array<Complex, 4>& amplitudes) {
    Vector v = Vector::Zero(layout.total_dim());
    for (int k = 0; k < 4; ++k)
        v(layout.flatten(kCompBasis[k][0], kCompBasis[k][1], 0)) = amplitudes[k];
    return v;
}

double state_fidelity(const SystemState& state, const Vector& ideal) {
    if (state.is_pure()) return std::norm(ideal.dot(state.vec));
    return (ideal.adjoint() * state.rho * ideal)(0).real();
}

// Eq.-(9)-style intermediate targets: amplitudes of the four columns after
// each of the three steps, for basis input k.
std::array<Vector, 3> ideal_checkpoints(const HilbertLayout& layout, int k) {
    const Complex i_unit(0.0, 1.0);
    auto ket = [&](int l1, int l2, int n, Complex amp) {
        Vector v = Vector::Zero(layout.total_dim());
        v(layout.flatten(l1, l2, n)) = amp;
        return v;
    };
    switch (k) {
        case 0: {
            const Vector v = ket(0, 0, 0, 1.0);
            return {v, v, v};
        }
        case 1: {
            const Vector v = ket(0, 1, 0, 1.0);
            return {v, v, v};
        }
        case 2:
            return {ket(1, 0, 1, i_unit), ket(1, 0, 1, i_unit), ket(1, 0, 0, 1.0)};
        default:
            return {ket(1, 1, 1, i_unit), ket(1, 1, 1, -i_unit), ket(1, 1, 0, -1.0)};
    }
}

Eigen::Vector4cd project_computational(const HilbertLayout& layout, const Vector& v) {
    Eigen::Vector4cd out;
    for (int k = 0; k < 4; ++k)
        out(k) = v(layout.flatten(kCompBasis[k][0], kCompBasis[k][1], 0));
    return out;
}

Vector dominant_eigenvector(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    return es.eigenvectors().col(rho.rows() - 1);  // eigenvalues ascending
}

}  // namespace

GateReport extract_gate(const DeviceConfig& config) {
    const HilbertLayout layout(config.cavity.n_max);
    const Eigen::Matrix4cd target = cp_target();

    GateReport report;
    report.mode = config.mode;

    std::array<double, 4> basis_probe_fid{};
    std::array<double, 3> ckpt_sum{};

    // Superposition probes: |+>|+> and (|00> + |11>)/sqrt(2).
    const std::array<Complex, 4> plus{0.5, 0.5, 0.5, 0.5};
    const std::array<Complex, 4> plus_out{0.5, 0.5, 0.5, -0.5};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> bell{inv_sqrt2, 0.0, 0.0, inv_sqrt2};
    const std::array<Complex, 4> bell_out{inv_sqrt2, 0.0, 0.0, -inv_sqrt2};

    // The six runs are independent; evaluate them on worker threads.
    std::array<SystemState, 6> initials = {
        basis_ket(layout, 0, 0, 0),
        basis_ket(layout, 0, 1, 0),
        basis_ket(layout, 1, 0, 0),
        basis_ket(layout, 1, 1, 0),
        SystemState::pure(layout, comp_vector(layout, plus)),
        SystemState::pure(layout, comp_vector(layout, bell))};
    std::array<std::optional<ProtocolRun>, 6> runs;
    {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= 6) return;
                try {
                    runs[i] = run_protocol(config, initials[i]);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        const unsigned n_workers =
            std::min(6u, std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < n_workers; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (int k = 0; k < 4; ++k) {
        const ProtocolRun& run = *runs[k];
        report.total_time = run.total_time;

        const auto ideals = ideal_checkpoints(layout, k);
        for (int c = 0; c < 3; ++c)
            ckpt_sum[c] += state_fidelity(run.checkpoints[c], ideals[c]);

        if (run.final_state.is_pure()) {
            const Eigen::Vector4cd col =
                project_computational(layout, run.final_state.vec);
            report.gate_matrix.col(k) = col;
            report.column_leakage[k] = 1.0 - col.squaredNorm();
        } else {
            // Density matrices carry no inter-column phase; take the dominant
            // eigenvector and align its phase with the target column so the
            // reported matrix stays informational.
            Eigen::Vector4cd col = project_computational(
                layout, dominant_eigenvector(run.final_state.rho));
            const Complex ov = (target.col(k).adjoint() * col)(0);
            if (std::abs(ov) > 0.0) col *= std::abs(ov) / ov;
            report.gate_matrix.col(k) = col;
            double comp_pop = 0.0;
            for (int r = 0; r < 4; ++r) {
                const int idx = layout.flatten(kCompBasis[r][0], kCompBasis[r][1], 0);
                comp_pop += run.final_state.rho(idx, idx).real();
            }
            report.column_leakage[k] = 1.0 - comp_pop;
        }
        basis_probe_fid[k] = state_fidelity(run.final_state,
                                            comp_vector(layout, [&] {
                                                std::array<Complex, 4> amp{};
                                                amp[k] = target(k, k);
                                                return amp;
                                            }()));
        report.avg_leakage += report.column_leakage[k] / 4.0;
    }
    for (int c = 0; c < 3; ++c) report.checkpoint_fidelities[c] = ckpt_sum[c] / 4.0;

    double probe_sum = basis_probe_fid[0] + basis_probe_fid[1] +
                       basis_probe_fid[2] + basis_probe_fid[3];
    probe_sum += state_fidelity(runs[4]->final_state, comp_vector(layout, plus_out));
    probe_sum += state_fidelity(runs[5]->final_state, comp_vector(layout, bell_out));
    report.probe_fidelity_mean = probe_sum / 6.0;

    report.process_fidelity = (config.mode == RunMode::Lindblad)
                                  ? report.probe_fidelity_mean
                                  : process_overlap(report.gate_matrix, target);
    return report;
}

Vector ideal_checkpoint_state(const HilbertLayout& layout, int basis_index,
                              int step) {
    if (basis_index < 0 || basis_index > 3)
        throw IndexError("ideal_checkpoint_state: basis_index must be 0..3");
    if (step < 1 || step > 3)
        throw IndexError("ideal_checkpoint_state: step must be 1..3");
    return ideal_checkpoints(layout, basis_index)[step - 1];
}

double max_checkpoint_deviation(const DeviceConfig& config) {
    if (config.mode == RunMode::Lindblad)
        throw ConfigError("max_checkpoint_deviation: closed-system modes only");
    const HilbertLayout layout(config.cavity.n_max);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        const ProtocolRun run = run_protocol(
            config, basis_ket(layout, kCompBasis[k][0], kCompBasis[k][1], 0));
        const auto ideals = ideal_checkpoints(layout, k);
        for (int c = 0; c < 3; ++c)
            worst = std::max(
                worst,
                (run.checkpoints[c].vec - ideals[c]).cwiseAbs().maxCoeff());
    }
    return worst;
}

double max_gate_deviation(const Eigen::Matrix4cd& gate) {
    return (gate - cp_target()).cwiseAbs().maxCoeff();
}

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "omega_over_g") return SweepAxis::OmegaOverG;
    if (name == "Q") return SweepAxis::QualityFactor;
    if (name == "gamma_scale") return SweepAxis::GammaScale;
    if (name == "g_asymmetry") return SweepAxis::GAsymmetry;
    throw ConfigError("unknown sweep axis '" + name +
                      "' (expected omega_over_g, Q, gamma_scale, g_asymmetry)");
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::OmegaOverG: return "omega_over_g";
        case SweepAxis::QualityFactor: return "Q";
        case SweepAxis::GammaScale: return "gamma_scale";
        case SweepAxis::GAsymmetry: return "g_asymmetry";
    }
    return "unknown";
}

DeviceConfig apply_sweep_value(const DeviceConfig& config, SweepAxis axis,
                               double value) {
    DeviceConfig out = config;
    switch (axis) {
        case SweepAxis::OmegaOverG:
            if (value <= 0.0) throw ConfigError("omega_over_g values must be positive");
            out.rabi = value * out.qubit1.g;
            out.per_segment_rabi.clear();
            break;
        case SweepAxis::QualityFactor:
            if (value <= 0.0) throw ConfigError("Q values must be positive");
            out.cavity.quality = value;
            break;
        case SweepAxis::GammaScale: {
            if (value < 0.0) throw ConfigError("gamma_scale values must be >= 0");
            for (auto* q : {&out.qubit1, &out.qubit2}) {
                for (auto& r : q->decoherence.decay) r *= value;
                for (auto& r : q->decoherence.dephase) r *= value;
            }
            out.kappa_override = value * out.cavity.kappa();
            break;
        }
        case SweepAxis::GAsymmetry:
            if (value <= 0.0) throw ConfigError("g_asymmetry values must be positive");
            out.qubit2.g = value * out.qubit1.g;
            break;
    }
    return out;
}

std::vector<SweepRow> sweep(const DeviceConfig& config, SweepAxis axis,
                            std::span<const double> values, int jobs) {
    if (values.empty()) throw ConfigError("sweep: value list is empty");
    std::vector<SweepRow> rows(values.size());

    if (jobs <= 0)
        jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, static_cast<int>(values.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size() || failed.load()) return;
            try {
                const DeviceConfig point = apply_sweep_value(config, axis, values[i]);
                const GateReport rep = extract_gate(point);
                rows[i] = {values[i], rep.process_fidelity, rep.avg_leakage,
                           rep.total_time};
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

}  // namespace fluxgate
