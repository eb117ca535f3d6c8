#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablevar/estimator.hpp"

namespace stablevar {

// Format: first line "# stablevar v1 <json-config>", then one value per line
// (levels) or "index,value" (increments). Dot decimal, shortest round-trip
// representation, no locale.

/// Thrown for malformed input; line is 1-based (0 when not line specific).
class SeriesParseError : public std::runtime_error {
 public:
  SeriesParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SeriesWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesFile {
  std::optional<nlohmann::json> header;
  std::vector<double> values;
  bool indexed = false;  // rows were "index,value"
};

std::string format_double(double x);

std::string render_series(const nlohmann::json& header, std::span<const double> values, InputMode mode);
void write_series(const std::string& path, const nlohmann::json& header, std::span<const double> values,
                  InputMode mode);

SeriesFile parse_series(const std::string& text);
/// Throws SeriesParseError when the file is missing, unreadable, malformed or
/// holds no values.
SeriesFile read_series(const std::string& path);

/// Writes text to path; throws SeriesWriteError when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace stablevar
