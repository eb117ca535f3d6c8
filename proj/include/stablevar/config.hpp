#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "stablevar/estimator.hpp"

namespace stablevar {

/// Everything a CLI run depends on. Serialized into the CSV header so a data
/// file records how it was produced.
struct RunConfig {
  std::string command;
  double alpha = 0.75;
  double scale = 6.35;
  double beta = 0.0;
  std::uint64_t n = 200;
  std::uint64_t m = 200;
  double horizon = 1.0;
  std::uint64_t fine_multiplier = 16;
  std::string drift = "cos";  // zero | cos
  double x0 = 0.0;
  double p = 1.5;
  SearchGrid grid;
  std::uint64_t seed = 1;
  std::string input;
  std::string output;
  InputMode mode = InputMode::levels;
  bool demean = false;
  std::string scenario;
  std::optional<double> slice_c;
  bool gnuplot = false;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);

/// Missing keys keep their defaults. Throws nlohmann::json::exception on type
/// errors and std::invalid_argument on unknown enum strings.
RunConfig config_from_json(const nlohmann::json& j);

std::string mode_name(InputMode mode);
InputMode parse_mode(const std::string& name);

}  // namespace stablevar
