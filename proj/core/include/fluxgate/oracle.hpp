#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fluxgate/analysis.hpp"

namespace fluxgate {
namespace oracle {

/// exp(A) via truncated Taylor series with scaling and squaring. Deliberately
/// a different algorithm from the eigendecomposition used by the main
/// propagator; the two paths share no numerical kernel.
Matrix expm_taylor(const Matrix& a);

/// Time-ordered product of per-step exponentials exp(-iH dt) over a piecewise
/// constant Hamiltonian sequence. The step within each segment is adjusted to
/// duration / round(duration / dt) so steps tile the segment exactly.
SystemState oracle_propagate(
    const std::vector<std::pair<OperatorMatrix, double>>& h_sequence, double dt,
    const SystemState& state);

struct GateFixture {
    Eigen::Matrix4cd gate = Eigen::Matrix4cd::Zero();
    double fidelity = 0.0;
    double dt = 0.0;
    std::string config_hash;
};

/// Brute-force gate extraction through oracle_propagate; used to freeze the
/// regression constants the main path is tested against.
GateFixture oracle_gate_fixture(const DeviceConfig& config, double dt);

/// Stable FNV-1a hash of the canonical config serialization, hex encoded.
std::string config_hash(const DeviceConfig& config);

}  // namespace oracle
}  // namespace fluxgate
