#pragma once

#include <array>
#include <span>
#include <vector>

#include "fluxgate/statespace.hpp"

namespace fluxgate {

/// Cavity coupling g on the |2><->|3> transition of one qudit.
/// Angular frequency, rad/s.
struct CouplingTerm {
    int qubit_index = 1;  // 1 or 2
    double g = 0.0;
    bool enabled = true;
};

/// Classical resonant pulse on the |i><->|j> transition of one qudit.
/// rabi and carrier are angular frequencies (rad/s); carrier is informational
/// and only consulted by resonance validation.
struct DriveTerm {
    int qubit_index = 1;
    int lower = 0;
    int upper = 1;
    double rabi = 0.0;
    double phase = 0.0;
    double carrier = 0.0;
};

/// Per-qudit decay rates gamma_l (|l> -> |l-1>, l = 1..3) and pure dephasing
/// rates gamma_phi_l (l = 1..3). All angular rates, rad/s.
struct QubitDecoherence {
    std::array<double, 3> decay{0.0, 0.0, 0.0};
    std::array<double, 3> dephase{0.0, 0.0, 0.0};
};

struct DecoherenceSpec {
    std::array<QubitDecoherence, 2> qubit{};
    double kappa = 0.0;  // cavity decay rate, rad/s
};

/// Collapse operator L with rate gamma: contributes
/// gamma (L rho L+ - 1/2 {L+L, rho}) to the master equation.
struct CollapseOp {
    Matrix op;
    double rate = 0.0;
};

/// Interaction-picture Hamiltonian (hbar = 1, angular frequencies):
/// H = sum_k g_k (a+ s23-(k) + a s23+(k))
///   + sum_d Omega_d (e^{i phi_d} |i_d><j_d| + h.c.)
OperatorMatrix build_hamiltonian(const HilbertLayout& layout,
                                 std::span<const CouplingTerm> couplings,
                                 std::span<const DriveTerm> drives);

/// exp(-iHt)|psi> (or U rho U+ for mixed states), via Hermitian
/// eigendecomposition. Exact up to floating point, no time stepping.
SystemState propagate_unitary(const OperatorMatrix& H, double t,
                              const SystemState& state);

/// Collapse operators for the standard minimal model: nearest-neighbor level
/// lowering, per-level dephasing, cavity photon loss.
std::vector<CollapseOp> collapse_operators(const HilbertLayout& layout,
                                           const DecoherenceSpec& spec);

/// Fixed-step RK4 integration of
/// d rho/dt = -i[H, rho] + sum_k gamma_k (L_k rho L_k+ - 1/2 {L_k+ L_k, rho}).
/// The result is re-symmetrized; trace drift beyond 1e-6 raises StepSizeError.
SystemState propagate_lindblad(const OperatorMatrix& H,
                               std::span<const CollapseOp> collapse, double t,
                               double dt, const SystemState& state);

/// Static resonance check: rejects a drive whose carrier spacing collides
/// (within the guard band) with a different transition of the same qudit.
/// levels are the four configured level frequencies of the addressed qudit.
void validate_drive_resonance(const std::array<double, 4>& levels,
                              const DriveTerm& drive, double guard_band);

}  // namespace fluxgate
