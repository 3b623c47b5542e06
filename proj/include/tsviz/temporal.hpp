#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/timestamp.hpp"

namespace tsviz {

/// Actual names given to the derived calendar columns (after the `_ts`
/// collision suffix has been applied).
struct CalendarColumns {
  std::string year = "year";
  std::string month = "month";
  std::string date = "date";
  std::string hour = "hour";
  std::string minute = "minute";
  std::string second = "second";
  std::string weekday = "weekday";
  std::string day = "day";
  std::string pm = "PM";
};

namespace detail {

inline const Column& timestamp_column(const Dataset& ds, std::string_view time_col) {
  const Column& col = ds.column(time_col);
  if (col.kind() != ColumnKind::timestamp) {
    throw Error(ErrorCode::wrong_kind, std::string(time_col) + " is " + std::string(to_string(col.kind())) +
                                           ", expected timestamp");
  }
  return col;
}

/// Parses each distinct timestamp once; returns per-dictionary-entry values.
inline std::vector<Timestamp> parse_dictionary(const Column& col, const TimeFormat& fmt) {
  std::vector<Timestamp> out;
  out.reserve(col.distinct_count());
  for (const auto& text : col.dictionary()) out.push_back(parse_timestamp(text, fmt));
  return out;
}

template <class Fn>
Column derive(const Column& src, const std::vector<Timestamp>& parsed, std::string name,
              ColumnKind kind, Fn fn) {
  std::vector<std::string> dict_text(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) dict_text[i] = fn(parsed[i]);
  ColumnBuilder b;
  b.reserve(src.size());
  for (auto code : src.codes()) {
    if (code == Column::kNull) {
      b.push_null();
    } else {
      b.push(std::string_view{dict_text[code]});
    }
  }
  return std::move(b).build(std::move(name), kind);
}

}  // namespace detail

/// Adds categorical `year, month, date, hour, minute, second` columns parsed
/// from `time_col`. Existing names get a `_ts` suffix. When `names` is given it
/// receives the names actually used.
inline Dataset decompose(const Dataset& ds, std::string_view time_col,
                         const TimeFormat& fmt = TimeFormat(), CalendarColumns* names = nullptr) {
  const Column& src = detail::timestamp_column(ds, time_col);
  const auto parsed = detail::parse_dictionary(src, fmt);
  using Getter = int (*)(const Timestamp&);
  const std::pair<const char*, Getter> fields[] = {
      {"year", [](const Timestamp& t) { return t.year; }},
      {"month", [](const Timestamp& t) { return t.month; }},
      {"date", [](const Timestamp& t) { return t.day; }},
      {"hour", [](const Timestamp& t) { return t.hour; }},
      {"minute", [](const Timestamp& t) { return t.minute; }},
      {"second", [](const Timestamp& t) { return t.second; }},
  };
  Dataset out = ds;
  CalendarColumns used = names ? *names : CalendarColumns{};
  std::string* slots[] = {&used.year, &used.month, &used.date, &used.hour, &used.minute, &used.second};
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    const auto& [base, get] = fields[i];
    std::string name = unique_column_name(out, base);
    *slots[i] = name;
    out = out.with_column(detail::derive(src, parsed, std::move(name), ColumnKind::categorical,
                                         [get](const Timestamp& t) { return std::to_string(get(t)); }));
  }
  if (names) *names = used;
  return out;
}

/// Adds `weekday` (1 = Monday..Friday), `day` (English day name) and `PM`
/// (1 when hour >= 12) derived from `time_col`.
inline Dataset derive_calendar_flags(const Dataset& ds, std::string_view time_col,
                                     const TimeFormat& fmt = TimeFormat(),
                                     CalendarColumns* names = nullptr) {
  const Column& src = detail::timestamp_column(ds, time_col);
  const auto parsed = detail::parse_dictionary(src, fmt);
  Dataset out = ds;

  std::string weekday = unique_column_name(out, "weekday");
  out = out.with_column(detail::derive(src, parsed, weekday, ColumnKind::binary_flag, [](const Timestamp& t) {
    return std::string(is_weekend(day_of_week(t)) ? "0" : "1");
  }));
  std::string day = unique_column_name(out, "day");
  out = out.with_column(detail::derive(src, parsed, day, ColumnKind::categorical, [](const Timestamp& t) {
    return std::string(day_name(day_of_week(t)));
  }));
  std::string pm = unique_column_name(out, "PM");
  out = out.with_column(detail::derive(src, parsed, pm, ColumnKind::binary_flag, [](const Timestamp& t) {
    return std::string(t.hour >= 12 ? "1" : "0");
  }));

  if (names) {
    names->weekday = weekday;
    names->day = day;
    names->pm = pm;
  }
  return out;
}

/// decompose followed by derive_calendar_flags.
inline std::pair<Dataset, CalendarColumns> engineer_calendar_features(const Dataset& ds,
                                                                      std::string_view time_col,
                                                                      const TimeFormat& fmt = TimeFormat()) {
  CalendarColumns names;
  Dataset out = decompose(ds, time_col, fmt, &names);
  out = derive_calendar_flags(out, time_col, fmt, &names);
  return {std::move(out), std::move(names)};
}

}  // namespace tsviz
