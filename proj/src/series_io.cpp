#include "stablevar/series_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stablevar {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

constexpr std::string_view kMagic = "# stablevar v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::string render_series(const nlohmann::json& header, std::span<const double> values, InputMode mode) {
  std::string out;
  out.reserve(values.size() * 24 + 512);
  out += kMagic;
  out += ' ';
  out += header.dump();
  out += '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mode == InputMode::increments) {
      out += std::to_string(i);
      out += ',';
    }
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw SeriesWriteError("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw SeriesWriteError("failed writing '" + path + "'");
}

void write_series(const std::string& path, const nlohmann::json& header, std::span<const double> values,
                  InputMode mode) {
  write_text(path, render_series(header, values, mode));
}

SeriesFile parse_series(const std::string& text) {
  SeriesFile out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no == 1 && line.substr(0, kMagic.size()) == kMagic) {
        const auto body = trim(line.substr(kMagic.size()));
        if (!body.empty()) {
          try {
            out.header = nlohmann::json::parse(body);
          } catch (const nlohmann::json::exception& e) {
            throw SeriesParseError("line 1: malformed header: " + std::string(e.what()), 1);
          }
        }
      }
      continue;
    }
    const auto comma = line.find(',');
    double value = 0.0;
    if (comma == std::string_view::npos) {
      if (!parse_number(line, value)) {
        throw SeriesParseError("line " + std::to_string(line_no) + ": not a number: '" + std::string(line) + "'",
                               line_no);
      }
    } else {
      double index = 0.0;
      if (line.find(',', comma + 1) != std::string_view::npos || !parse_number(line.substr(0, comma), index) ||
          !parse_number(line.substr(comma + 1), value)) {
        throw SeriesParseError("line " + std::to_string(line_no) + ": expected 'index,value': '" +
                                   std::string(line) + "'",
                               line_no);
      }
      out.indexed = true;
    }
    out.values.push_back(value);
  }
  if (out.values.empty()) throw SeriesParseError("input holds no values", 0);
  return out;
}

SeriesFile read_series(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw SeriesParseError("cannot open input '" + path + "'", 0);
  std::ostringstream text;
  text << file.rdbuf();
  return parse_series(text.str());
}

}  // namespace stablevar
