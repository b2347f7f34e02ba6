#include "fluxgate/oracle.hpp"

#include <cmath>

#include "fluxgate/config.hpp"

namespace fluxgate {
namespace oracle {

Matrix expm_taylor(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm

    int squarings = 0;
    if (norm > 0.5)
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix b = a / std::pow(2.0, squarings);

    Matrix sum = Matrix::Identity(d, d);
    Matrix term = Matrix::Identity(d, d);
    for (int k = 1; k <= 64; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

SystemState oracle_propagate(
    const std::vector<std::pair<OperatorMatrix, double>>& h_sequence, double dt,
    const SystemState& state) {
    if (dt <= 0.0) throw DomainError("oracle_propagate: dt must be positive");

    SystemState out = state;
    for (const auto& [h, duration] : h_sequence) {
        if (duration < 0.0)
            throw DomainError("oracle_propagate: durations must be >= 0");
        if (duration == 0.0) continue;
        if (h.entries.rows() != out.layout.total_dim())
            throw DimensionError("oracle_propagate: operator/state dimension mismatch");

        const long n = std::max<long>(1, std::lround(duration / dt));
        const double step = duration / static_cast<double>(n);
        const Matrix u = expm_taylor(Complex(0.0, -step) * h.entries);
        if (out.is_pure()) {
            for (long s = 0; s < n; ++s) out.vec = u * out.vec;
        } else {
            const Matrix u_dag = u.adjoint();
            for (long s = 0; s < n; ++s) out.rho = u * out.rho * u_dag;
        }
    }
    return out;
}

GateFixture oracle_gate_fixture(const DeviceConfig& config, double dt) {
    if (config.mode == RunMode::Lindblad)
        throw ConfigError("oracle_gate_fixture: closed-system modes only");

    const auto segments = build_cp_schedule(config);
    const HilbertLayout layout(config.cavity.n_max);

    std::vector<std::pair<OperatorMatrix, double>> sequence;
    sequence.reserve(segments.size());
    for (const auto& seg : segments) {
        std::vector<CouplingTerm> couplings;
        if (seg.couplings_active) {
            if (seg.wait_qubit != 0 && !config.wait_couplings_both) {
                couplings.push_back({seg.wait_qubit, config.qubit(seg.wait_qubit).g});
            } else {
                couplings.push_back({1, config.qubit1.g});
                couplings.push_back({2, config.qubit2.g});
            }
        }
        sequence.emplace_back(build_hamiltonian(layout, couplings, seg.drives),
                              seg.duration);
    }

    GateFixture fixture;
    fixture.dt = dt;
    fixture.config_hash = config_hash(config);
    constexpr std::array<std::array<int, 2>, 4> comp{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    for (int k = 0; k < 4; ++k) {
        const auto initial = basis_ket(layout, comp[k][0], comp[k][1], 0);
        const SystemState final_state = oracle_propagate(sequence, dt, initial);
        for (int r = 0; r < 4; ++r)
            fixture.gate(r, k) =
                final_state.vec(layout.flatten(comp[r][0], comp[r][1], 0));
    }
    fixture.fidelity = process_overlap(fixture.gate, cp_target());
    return fixture;
}

std::string config_hash(const DeviceConfig& config) {
    const std::string canonical = canonical_config_string(config);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (const unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace oracle
}  // namespace fluxgate
