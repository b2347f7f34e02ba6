#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "fluxgate/protocol.hpp"

namespace fluxgate {

/// Loads and validates a device config.
///
/// File schema (all frequencies are ordinary, non-angular; converted to
/// rad/s internally by a single x 2 pi choke point):
/// {
///   "qubits": [                       // exactly two entries
///     { "levels_ghz": [w0, w1, w2, w3],   // absolute, ascending
///       "g_mhz": 100.0,
///       "gamma_mhz": [g1, g2, g3],        // decay of levels 1..3, optional
///       "gamma_phi_mhz": [p1, p2, p3] },  // dephasing of levels 1..3, optional
///     ...
///   ],
///   "cavity": { "nu_ghz": 3.0, "Q": 1e4, "n_max": 2 },
///   "drive": { "omega_mhz": 300.0,
///              "per_segment_omega_mhz": { "4": 600.0 } },  // optional
///   "mode": "sequential_ideal" | "concurrent" | "lindblad",
///   "lindblad_dt_ns": 0.001,          // optional
///   "wait_couplings_both": true,      // optional
///   "resonance_guard_mhz": 500.0      // optional
/// }
DeviceConfig load_config(const std::string& path);

DeviceConfig config_from_json(const nlohmann::json& j);

/// The worked example regime: 5/10/3 GHz spacings, g1 = g2 = 100 MHz,
/// Omega = 300 MHz, cavity at 3 GHz with Q = 1e4.
DeviceConfig paper_config();

/// Resolved config in file-schema units, with a fixed key order.
nlohmann::ordered_json resolved_config_json(const DeviceConfig& config);

/// Deterministic serialization used for config hashing.
std::string canonical_config_string(const DeviceConfig& config);

}  // namespace fluxgate
