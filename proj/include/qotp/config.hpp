#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qotp/errors.hpp"
#include "qotp/protocol.hpp"

namespace qotp {

/// Raw contents of a run-configuration file. Protocol fields are optional
/// here; each subcommand validates the subset it needs.
struct FileConfig {
  std::optional<std::vector<int>> message;
  std::optional<double> control_probability;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_rounds;
  bool abort_on_detection = false;
  AttackModel attack = AttackModel::none();
};

inline std::vector<int> parse_bit_string(const std::string& s) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (const char c : s) {
    if (c != '0' && c != '1') {
      throw ConfigError("message must be a string of 0/1 characters");
    }
    bits.push_back(c - '0');
  }
  return bits;
}

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

inline Matrix parse_kraus_matrix(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(where + " must be a nonempty array of rows");
  }
  const std::size_t dim = j.size();
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != dim) {
      throw ConfigError(where + " row " + std::to_string(r) + " must have " +
                        std::to_string(dim) + " entries (operator must be square)");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& cell = row[c];
      if (!cell.is_array() || cell.size() != 2) {
        throw ConfigError(where + " entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") must be an [re, im] pair");
      }
      m(r, c) = cplx(require_number(cell[0], where + " re part"),
                     require_number(cell[1], where + " im part"));
    }
  }
  return m;
}

}  // namespace detail

/// Attack object: {"type": "none" | "intercept_resend" | "depolarizing" |
/// "general_kraus", "basis_policy": ..., "p": ..., "kraus": [[[re,im],..],..]}.
inline AttackModel parse_attack(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("attack must be an object");
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("attack.type must be a string");
  }
  const std::string type = j["type"].get<std::string>();

  if (type == "none") {
    return AttackModel::none();
  }
  if (type == "intercept_resend") {
    if (!j.contains("basis_policy") || !j["basis_policy"].is_string()) {
      throw ConfigError("attack.basis_policy must be a string");
    }
    const std::string policy = j["basis_policy"].get<std::string>();
    if (policy == "always_z") return AttackModel::intercept_resend(BasisPolicy::AlwaysZ);
    if (policy == "always_x") return AttackModel::intercept_resend(BasisPolicy::AlwaysX);
    if (policy == "random_zx") return AttackModel::intercept_resend(BasisPolicy::RandomZX);
    throw ConfigError("attack.basis_policy must be always_z, always_x or random_zx");
  }
  if (type == "depolarizing") {
    if (!j.contains("p")) throw ConfigError("attack.p is required for depolarizing");
    const double p = detail::require_number(j["p"], "attack.p");
    try {
      return AttackModel::depolarizing(p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (type == "general_kraus") {
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
      throw ConfigError("attack.kraus must be a nonempty array of operators");
    }
    std::vector<Matrix> ops;
    ops.reserve(j["kraus"].size());
    for (std::size_t k = 0; k < j["kraus"].size(); ++k) {
      ops.push_back(detail::parse_kraus_matrix(j["kraus"][k],
                                               "attack.kraus[" + std::to_string(k) + "]"));
    }
    try {
      return AttackModel::general_kraus(KrausChannel(std::move(ops), "general_kraus"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("attack.kraus: ") + e.what());
    }
  }
  throw ConfigError("attack.type '" + type + "' is not one of none, intercept_resend, "
                    "depolarizing, general_kraus");
}

inline FileConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  FileConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "message") {
      if (!value.is_string()) throw ConfigError("message must be a bit string");
      cfg.message = parse_bit_string(value.get<std::string>());
    } else if (key == "control_probability") {
      cfg.control_probability = detail::require_number(value, "control_probability");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ConfigError("seed must be an unsigned integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "max_rounds") {
      if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0) {
        throw ConfigError("max_rounds must be a positive integer");
      }
      cfg.max_rounds = value.get<std::size_t>();
    } else if (key == "abort_on_detection") {
      if (!value.is_boolean()) throw ConfigError("abort_on_detection must be a boolean");
      cfg.abort_on_detection = value.get<bool>();
    } else if (key == "attack") {
      cfg.attack = parse_attack(value);
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return cfg;
}

/// Assembles a validated RunConfig; all protocol fields must be present.
inline RunConfig to_run_config(const FileConfig& file) {
  if (!file.message) throw ConfigError("config field 'message' is required");
  if (!file.control_probability) {
    throw ConfigError("config field 'control_probability' is required");
  }
  if (!file.seed) throw ConfigError("config field 'seed' is required");
  if (!file.max_rounds) throw ConfigError("config field 'max_rounds' is required");

  RunConfig cfg;
  cfg.message = *file.message;
  cfg.control_probability = *file.control_probability;
  cfg.seed = *file.seed;
  cfg.max_rounds = *file.max_rounds;
  cfg.abort_on_detection = file.abort_on_detection;
  cfg.attack = file.attack;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace qotp
