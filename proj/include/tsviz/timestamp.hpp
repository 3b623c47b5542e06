#pragma once

#include <array>
#include <compare>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsviz/error.hpp"

namespace tsviz {

/// Naive (zone-less) proleptic Gregorian date-time with second resolution.
struct Timestamp {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

enum class Weekday { monday, tuesday, wednesday, thursday, friday, saturday, sunday };

inline constexpr std::array<std::string_view, 7> kDayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

constexpr std::string_view day_name(Weekday d) { return kDayNames[static_cast<int>(d)]; }

inline std::optional<Weekday> weekday_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDayNames.size(); ++i) {
    if (kDayNames[i] == name) return static_cast<Weekday>(i);
  }
  return std::nullopt;
}

constexpr bool is_weekend(Weekday d) { return d == Weekday::saturday || d == Weekday::sunday; }

constexpr bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

constexpr int days_in_month(int year, int month) {
  constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[month - 1];
}

constexpr bool is_valid_date(int year, int month, int day) {
  return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

/// Days since 1970-01-01 for a civil date (era-based, exact for any year).
constexpr std::int64_t days_from_civil(int year, int month, int day) {
  const std::int64_t y = static_cast<std::int64_t>(year) - (month <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (month + 9) % 12;
  const std::int64_t doy = (153 * mp + 2) / 5 + day - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

/// Civil weekday; throws InvalidDate for impossible dates.
inline Weekday day_of_week(int year, int month, int day) {
  if (!is_valid_date(year, month, day)) {
    throw Error(ErrorCode::invalid_date, std::to_string(year) + "-" + std::to_string(month) + "-" +
                                             std::to_string(day));
  }
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  const std::int64_t days = days_from_civil(year, month, day);
  const std::int64_t idx = ((days % 7) + 7 + 3) % 7;
  return static_cast<Weekday>(idx);
}

inline Weekday day_of_week(const Timestamp& ts) { return day_of_week(ts.year, ts.month, ts.day); }

/// Field-token timestamp layout. Tokens: YYYY, MM, DD, hh, mm, ss; every
/// other character must match literally. Fields absent from the layout take
/// their minimum value.
class TimeFormat {
 public:
  enum class Field { year, month, day, hour, minute, second, literal };
  struct Token {
    Field field;
    char literal;
  };

  TimeFormat() : TimeFormat(kDefaultPattern) {}

  explicit TimeFormat(std::string_view pattern) : pattern_(pattern) {
    std::size_t i = 0;
    while (i < pattern.size()) {
      auto rest = pattern.substr(i);
      if (rest.starts_with("YYYY")) {
        tokens_.push_back({Field::year, 0});
        i += 4;
      } else if (rest.starts_with("MM")) {
        tokens_.push_back({Field::month, 0});
        i += 2;
      } else if (rest.starts_with("DD")) {
        tokens_.push_back({Field::day, 0});
        i += 2;
      } else if (rest.starts_with("hh")) {
        tokens_.push_back({Field::hour, 0});
        i += 2;
      } else if (rest.starts_with("mm")) {
        tokens_.push_back({Field::minute, 0});
        i += 2;
      } else if (rest.starts_with("ss")) {
        tokens_.push_back({Field::second, 0});
        i += 2;
      } else {
        tokens_.push_back({Field::literal, pattern[i]});
        ++i;
      }
    }
    bool has_year = false;
    for (const auto& t : tokens_) has_year |= t.field == Field::year;
    if (!has_year) {
      throw Error(ErrorCode::invalid_argument, "time format '" + pattern_ + "' lacks YYYY");
    }
  }

  static constexpr std::string_view kDefaultPattern = "YYYY-MM-DD hh:mm:ss";
  static constexpr std::string_view kIsoPattern = "YYYY-MM-DDThh:mm:ss";

  const std::string& pattern() const noexcept { return pattern_; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }

 private:
  std::string pattern_;
  std::vector<Token> tokens_;
};

namespace detail {

inline bool parse_digits(std::string_view text, std::size_t& pos, int width, int& out) {
  if (pos + width > text.size()) return false;
  int v = 0;
  for (int k = 0; k < width; ++k) {
    char c = text[pos + k];
    if (c < '0' || c > '9') {
      pos += k;
      return false;
    }
    v = v * 10 + (c - '0');
  }
  pos += width;
  out = v;
  return true;
}

}  // namespace detail

/// Parses `text` against `format`. Throws ParseError at the first offending
/// byte, or InvalidDate when fields are well-formed but out of range.
inline Timestamp parse_timestamp(std::string_view text, const TimeFormat& format = TimeFormat()) {
  Timestamp ts{0, 1, 1, 0, 0, 0};
  std::size_t pos = 0;
  for (const auto& tok : format.tokens()) {
    if (tok.field == TimeFormat::Field::literal) {
      if (pos >= text.size() || text[pos] != tok.literal) throw ParseError(std::string(text), pos);
      ++pos;
      continue;
    }
    int* target = nullptr;
    int width = 2;
    switch (tok.field) {
      case TimeFormat::Field::year: target = &ts.year; width = 4; break;
      case TimeFormat::Field::month: target = &ts.month; break;
      case TimeFormat::Field::day: target = &ts.day; break;
      case TimeFormat::Field::hour: target = &ts.hour; break;
      case TimeFormat::Field::minute: target = &ts.minute; break;
      case TimeFormat::Field::second: target = &ts.second; break;
      case TimeFormat::Field::literal: break;
    }
    if (!detail::parse_digits(text, pos, width, *target)) throw ParseError(std::string(text), pos);
  }
  if (pos != text.size()) throw ParseError(std::string(text), pos);
  if (!is_valid_date(ts.year, ts.month, ts.day) || ts.hour > 23 || ts.minute > 59 ||
      ts.second > 59) {
    throw Error(ErrorCode::invalid_date, std::string(text));
  }
  return ts;
}

inline std::optional<Timestamp> try_parse_timestamp(std::string_view text,
                                                    const TimeFormat& format = TimeFormat()) {
  try {
    return parse_timestamp(text, format);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Renders in the default `YYYY-MM-DD hh:mm:ss` layout.
inline std::string to_string(const Timestamp& ts) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", ts.year, ts.month, ts.day,
                ts.hour, ts.minute, ts.second);
  return buf;
}

/// Adds whole seconds, carrying across days (used by the synthetic generator).
inline Timestamp add_seconds(const Timestamp& ts, std::int64_t seconds) {
  std::int64_t total = days_from_civil(ts.year, ts.month, ts.day) * 86400 + ts.hour * 3600 +
                       ts.minute * 60 + ts.second + seconds;
  std::int64_t days = total >= 0 ? total / 86400 : (total - 86399) / 86400;
  std::int64_t secs = total - days * 86400;
  // civil_from_days
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  const int y = static_cast<int>(yoe + era * 400 + (m <= 2 ? 1 : 0));
  return Timestamp{y, m, d, static_cast<int>(secs / 3600), static_cast<int>(secs % 3600 / 60),
                   static_cast<int>(secs % 60)};
}

}  // namespace tsviz
