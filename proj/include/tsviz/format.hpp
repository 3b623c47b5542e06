#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace tsviz {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_shortest(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

/// Fixed notation with `digits` fractional digits; negative zero prints as zero.
inline std::string format_fixed(double value, int digits = 3) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, digits);
  std::string out(buf, res.ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

inline std::string format_fixed3(double value) { return format_fixed(value, 3); }

inline std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Finite decimal number (optional sign, fraction, exponent). Rejects
/// inf/nan spellings and trailing garbage.
inline std::optional<double> parse_number(std::string_view text) {
  text = trim_spaces(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  const char c = text.front() == '-' && text.size() > 1 ? text[1] : text.front();
  if (!(c >= '0' && c <= '9') && c != '.') return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline bool is_integral_number(std::string_view text) {
  auto v = parse_number(text);
  return v && std::floor(*v) == *v && std::fabs(*v) < 9.0e15;
}

/// RFC-4180 field quoting: quote when the field holds the delimiter, a quote,
/// or a line break.
inline std::string csv_field(std::string_view field, char delimiter = ',') {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace tsviz
