#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <string>

namespace fluxgate {

/// Serializes JSON with numbers printed at 17 significant digits so a report
/// is byte-identical across runs and platforms with IEEE doubles.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// Complex matrix as nested arrays of [re, im] pairs.
nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXcd& m);

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fluxgate
