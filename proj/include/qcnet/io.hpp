#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "qcnet/blochmessiah.hpp"
#include "qcnet/dynamics.hpp"
#include "qcnet/network.hpp"
#include "qcnet/optics.hpp"

namespace qcnet {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit hash, printed as 16 hex digits; stable across platforms.
std::uint64_t fnv1a64(const std::string& text);
std::string config_hash(const nlohmann::json& config);

/// Adds the tool_version / config_hash stamp every output file carries.
void stamp(nlohmann::json& j, const std::string& hash);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& M);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

nlohmann::json network_to_json(const OscillatorNetwork& net);
OscillatorNetwork network_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const GaussianState& state);
GaussianState state_from_json(const nlohmann::json& j);

nlohmann::json bloch_messiah_to_json(const BlochMessiah& bm);

nlohmann::json pump_to_json(const PumpShape& pump);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

/// CSV with "# key=value" meta lines (tool version and config hash first),
/// a header row, then rows formatted with %.12g.
void write_csv(const std::string& path, const std::string& hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double value);

}  // namespace qcnet
