#include "fluxgate/config.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "fluxgate/report.hpp"

namespace fluxgate {

namespace {

constexpr double kGhzToRad = 2.0 * M_PI * 1e9;
constexpr double kMhzToRad = 2.0 * M_PI * 1e6;

using nlohmann::json;

double require_number(const json& j, const std::string& where) {
    if (!j.is_number())
        throw ConfigError("config field '" + where + "' must be a number");
    return j.get<double>();
}

QuditSpec parse_qubit(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
    QuditSpec spec;

    const auto& levels = j.at("levels_ghz");
    if (!levels.is_array() || levels.size() != 4)
        throw ConfigError("'" + where + ".levels_ghz' must hold 4 values");
    for (int l = 0; l < 4; ++l)
        spec.level[l] = kGhzToRad * require_number(levels[l], where + ".levels_ghz");

    spec.g = kMhzToRad * require_number(j.at("g_mhz"), where + ".g_mhz");

    auto parse_rates = [&](const char* key, std::array<double, 3>& out) {
        if (!j.contains(key)) return;
        const auto& arr = j.at(key);
        if (!arr.is_array() || arr.size() != 3)
            throw ConfigError("'" + where + "." + key +
                              "' must hold 3 values (levels 1..3)");
        for (int l = 0; l < 3; ++l)
            out[l] = kMhzToRad * require_number(arr[l], where + std::string(".") + key);
    };
    parse_rates("gamma_mhz", spec.decoherence.decay);
    parse_rates("gamma_phi_mhz", spec.decoherence.dephase);
    return spec;
}

}  // namespace

DeviceConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    DeviceConfig config;

    const auto& qubits = j.at("qubits");
    if (!qubits.is_array() || qubits.size() != 2)
        throw ConfigError("'qubits' must be an array of exactly 2 entries");
    config.qubit1 = parse_qubit(qubits[0], "qubits[0]");
    config.qubit2 = parse_qubit(qubits[1], "qubits[1]");

    const auto& cavity = j.at("cavity");
    config.cavity.nu_c = 1e9 * require_number(cavity.at("nu_ghz"), "cavity.nu_ghz");
    config.cavity.quality = require_number(cavity.at("Q"), "cavity.Q");
    config.cavity.n_max = cavity.value("n_max", 2);

    const auto& drive = j.at("drive");
    config.rabi = kMhzToRad * require_number(drive.at("omega_mhz"), "drive.omega_mhz");
    if (drive.contains("per_segment_omega_mhz")) {
        for (const auto& [key, value] : drive.at("per_segment_omega_mhz").items()) {
            int position = 0;
            try {
                position = std::stoi(key);
            } catch (const std::exception&) {
                throw ConfigError("per_segment_omega_mhz keys must be segment "
                                  "positions 1..9, got '" + key + "'");
            }
            if (position < 1 || position > 9)
                throw ConfigError("per_segment_omega_mhz position out of range: " + key);
            config.per_segment_rabi[position] =
                kMhzToRad * require_number(value, "drive.per_segment_omega_mhz");
        }
    }

    config.mode = run_mode_from_string(j.value("mode", "sequential_ideal"));
    if (j.contains("lindblad_dt_ns"))
        config.lindblad_dt = 1e-9 * require_number(j.at("lindblad_dt_ns"),
                                                   "lindblad_dt_ns");
    config.wait_couplings_both = j.value("wait_couplings_both", true);
    if (j.contains("resonance_guard_mhz"))
        config.resonance_guard =
            kMhzToRad * require_number(j.at("resonance_guard_mhz"),
                                       "resonance_guard_mhz");

    validate_config(config);
    return config;
}

DeviceConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::out_of_range& e) {
        throw ConfigError("missing config field in " + path + ": " + e.what());
    }
}

DeviceConfig paper_config() {
    DeviceConfig config;
    const std::array<double, 4> levels{0.0, kGhzToRad * 5.0, kGhzToRad * 15.0,
                                       kGhzToRad * 18.0};
    config.qubit1.level = levels;
    config.qubit2.level = levels;
    config.qubit1.g = kMhzToRad * 100.0;
    config.qubit2.g = kMhzToRad * 100.0;
    config.cavity.nu_c = 3e9;
    config.cavity.quality = 1e4;
    config.cavity.n_max = 2;
    config.rabi = kMhzToRad * 300.0;
    config.mode = RunMode::SequentialIdeal;
    return config;
}

nlohmann::ordered_json resolved_config_json(const DeviceConfig& config) {
    nlohmann::ordered_json root;
    auto qubit_json = [](const QuditSpec& q) {
        nlohmann::ordered_json j;
        j["levels_ghz"] = {q.level[0] / kGhzToRad, q.level[1] / kGhzToRad,
                           q.level[2] / kGhzToRad, q.level[3] / kGhzToRad};
        j["g_mhz"] = q.g / kMhzToRad;
        j["gamma_mhz"] = {q.decoherence.decay[0] / kMhzToRad,
                          q.decoherence.decay[1] / kMhzToRad,
                          q.decoherence.decay[2] / kMhzToRad};
        j["gamma_phi_mhz"] = {q.decoherence.dephase[0] / kMhzToRad,
                              q.decoherence.dephase[1] / kMhzToRad,
                              q.decoherence.dephase[2] / kMhzToRad};
        return j;
    };
    root["qubits"] = {qubit_json(config.qubit1), qubit_json(config.qubit2)};
    root["cavity"] = {{"nu_ghz", config.cavity.nu_c / 1e9},
                      {"Q", config.cavity.quality},
                      {"n_max", config.cavity.n_max}};
    nlohmann::ordered_json drive;
    drive["omega_mhz"] = config.rabi / kMhzToRad;
    if (!config.per_segment_rabi.empty()) {
        nlohmann::ordered_json overrides;
        for (const auto& [pos, rabi] : config.per_segment_rabi)
            overrides[std::to_string(pos)] = rabi / kMhzToRad;
        drive["per_segment_omega_mhz"] = overrides;
    }
    root["drive"] = drive;
    root["mode"] = to_string(config.mode);
    if (config.lindblad_dt) root["lindblad_dt_ns"] = *config.lindblad_dt * 1e9;
    root["wait_couplings_both"] = config.wait_couplings_both;
    root["resonance_guard_mhz"] = config.resonance_guard / kMhzToRad;
    return root;
}

std::string canonical_config_string(const DeviceConfig& config) {
    return dump_json(resolved_config_json(config));
}

}  // namespace fluxgate
