#include "fluxgate/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>

namespace fluxgate {

OperatorMatrix build_hamiltonian(const HilbertLayout& layout,
                                 std::span<const CouplingTerm> couplings,
                                 std::span<const DriveTerm> drives) {
    const int d = layout.total_dim();
    Matrix lower = Matrix::Zero(d, d);  // accumulates B; H = B + B+

    const Matrix a = cavity_annihilation(layout).entries;
    const Matrix a_dag = a.adjoint();

    for (const auto& c : couplings) {
        if (c.qubit_index != 1 && c.qubit_index != 2)
            throw ConfigError("CouplingTerm: qubit_index must be 1 or 2");
        if (!c.enabled) continue;
        if (c.g <= 0.0) throw ConfigError("CouplingTerm: g must be positive");
        const Matrix sigma_minus =
            embed_qudit_operator(layout, c.qubit_index, level_projector(2, 3)).entries;
        lower += c.g * (a_dag * sigma_minus);
    }

    std::set<std::tuple<int, int, int>> seen;
    for (const auto& drv : drives) {
        if (drv.qubit_index != 1 && drv.qubit_index != 2)
            throw ConfigError("DriveTerm: qubit_index must be 1 or 2");
        if (drv.lower < 0 || drv.lower >= drv.upper || drv.upper >= kLevels)
            throw ConfigError("DriveTerm: need 0 <= i < j <= 3");
        if (drv.rabi <= 0.0) throw ConfigError("DriveTerm: rabi must be positive");
        if (!seen.insert({drv.qubit_index, drv.lower, drv.upper}).second)
            throw ConfigError("DriveTerm: duplicate drive on qubit " +
                              std::to_string(drv.qubit_index) + " transition (" +
                              std::to_string(drv.lower) + "," +
                              std::to_string(drv.upper) + ")");
        const Complex amp = drv.rabi * std::exp(Complex(0.0, drv.phase));
        lower += amp * embed_qudit_operator(layout, drv.qubit_index,
                                            level_projector(drv.lower, drv.upper))
                           .entries;
    }

    // B + B+ is elementwise-exactly Hermitian in floating point.
    Matrix h = lower + lower.adjoint();
    return {std::move(h), true};
}

namespace {

void require_hermitian(const OperatorMatrix& H, const char* where) {
    const double scale = std::max(1.0, H.entries.cwiseAbs().maxCoeff());
    const double dev = (H.entries - H.entries.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-13 * scale)
        throw ContractViolation(std::string(where) +
                                ": Hamiltonian is not Hermitian (max deviation " +
                                std::to_string(dev) + ")");
}

}  // namespace

SystemState propagate_unitary(const OperatorMatrix& H, double t,
                              const SystemState& state) {
    require_hermitian(H, "propagate_unitary");
    if (t < 0.0) throw DomainError("propagate_unitary: t must be >= 0");
    if (H.entries.rows() != state.layout.total_dim())
        throw DimensionError("propagate_unitary: Hamiltonian/state dimension mismatch");

    Eigen::SelfAdjointEigenSolver<Matrix> es(H.entries);
    const Vector phases =
        (Complex(0.0, -t) * es.eigenvalues().cast<Complex>().array()).exp();
    const Matrix u = es.eigenvectors() * phases.asDiagonal() *
                     es.eigenvectors().adjoint();

    if (state.is_pure())
        return SystemState::pure(state.layout, u * state.vec);
    return SystemState::mixed(state.layout, u * state.rho * u.adjoint());
}

std::vector<CollapseOp> collapse_operators(const HilbertLayout& layout,
                                           const DecoherenceSpec& spec) {
    std::vector<CollapseOp> ops;
    for (int q = 0; q < 2; ++q) {
        const auto& dq = spec.qubit[q];
        for (int l = 1; l < kLevels; ++l) {
            if (dq.decay[l - 1] < 0.0 || dq.dephase[l - 1] < 0.0)
                throw ConfigError("DecoherenceSpec: rates must be >= 0");
            if (dq.decay[l - 1] > 0.0)
                ops.push_back({embed_qudit_operator(layout, q + 1,
                                                    level_projector(l - 1, l))
                                   .entries,
                               dq.decay[l - 1]});
            if (dq.dephase[l - 1] > 0.0)
                ops.push_back({embed_qudit_operator(layout, q + 1,
                                                    level_projector(l, l))
                                   .entries,
                               dq.dephase[l - 1]});
        }
    }
    if (spec.kappa < 0.0) throw ConfigError("DecoherenceSpec: kappa must be >= 0");
    if (spec.kappa > 0.0)
        ops.push_back({cavity_annihilation(layout).entries, spec.kappa});
    return ops;
}

SystemState propagate_lindblad(const OperatorMatrix& H,
                               std::span<const CollapseOp> collapse, double t,
                               double dt, const SystemState& state) {
    require_hermitian(H, "propagate_lindblad");
    if (dt <= 0.0) throw DomainError("propagate_lindblad: dt must be positive");
    if (t < 0.0) throw DomainError("propagate_lindblad: t must be >= 0");

    Matrix rho = state.is_pure() ? Matrix(state.vec * state.vec.adjoint()) : state.rho;
    if (rho.rows() != H.entries.rows())
        throw DimensionError("propagate_lindblad: Hamiltonian/state dimension mismatch");
    const double trace_in = rho.trace().real();

    struct Dissipator {
        Matrix l;
        Matrix ldl;  // L+ L
        double rate;
    };
    std::vector<Dissipator> diss;
    diss.reserve(collapse.size());
    for (const auto& c : collapse) {
        if (c.rate < 0.0) throw ConfigError("CollapseOp: rate must be >= 0");
        if (c.rate == 0.0) continue;
        diss.push_back({c.op, c.op.adjoint() * c.op, c.rate});
    }

    // Every RK4 stage argument is Hermitian (rhs maps Hermitian to
    // Hermitian), so rH = (Hr)+ and r ldl = (ldl r)+.
    Matrix hr, lr, ar;
    const auto rhs = [&](const Matrix& r) -> Matrix {
        hr.noalias() = H.entries * r;
        Matrix out = Complex(0.0, -1.0) * (hr - hr.adjoint());
        for (const auto& dsp : diss) {
            lr.noalias() = dsp.l * r;
            ar.noalias() = dsp.ldl * r;
            out.noalias() += dsp.rate * (lr * dsp.l.adjoint());
            out -= (0.5 * dsp.rate) * (ar + ar.adjoint());
        }
        return out;
    };

    const long n_steps = std::max<long>(1, std::lround(t / dt));
    const double h = t / static_cast<double>(n_steps);
    if (t == 0.0) return SystemState::mixed(state.layout, std::move(rho));

    for (long s = 0; s < n_steps; ++s) {
        const Matrix k1 = rhs(rho);
        const Matrix k2 = rhs(rho + 0.5 * h * k1);
        const Matrix k3 = rhs(rho + 0.5 * h * k2);
        const Matrix k4 = rhs(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace().real() - trace_in);
    if (drift > 1e-6)
        throw StepSizeError("propagate_lindblad: trace drifted by " +
                            std::to_string(drift) + "; use a smaller dt");
    return SystemState::mixed(state.layout, std::move(rho));
}

void validate_drive_resonance(const std::array<double, 4>& levels,
                              const DriveTerm& drive, double guard_band) {
    if (drive.lower < 0 || drive.lower >= drive.upper || drive.upper >= kLevels)
        throw ConfigError("validate_drive_resonance: need 0 <= i < j <= 3");
    const double spacing = levels[drive.upper] - levels[drive.lower];
    if (spacing <= 0.0)
        throw ConfigError("validate_drive_resonance: level frequencies not ascending");
    if (drive.carrier > 0.0 &&
        std::abs(drive.carrier - spacing) > 1e-6 * spacing)
        throw ConfigError("drive carrier is off resonance with the (" +
                          std::to_string(drive.lower) + "," +
                          std::to_string(drive.upper) + ") spacing");
    for (int i = 0; i < kLevels; ++i) {
        for (int j = i + 1; j < kLevels; ++j) {
            if (i == drive.lower && j == drive.upper) continue;
            const double other = levels[j] - levels[i];
            if (std::abs(other - spacing) < guard_band)
                throw ConfigError(
                    "drive on (" + std::to_string(drive.lower) + "," +
                    std::to_string(drive.upper) + ") collides with the (" +
                    std::to_string(i) + "," + std::to_string(j) +
                    ") spacing inside the guard band");
        }
    }
}

}  // namespace fluxgate
