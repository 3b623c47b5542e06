#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tsviz/aggregation.hpp"
#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/temporal.hpp"

namespace tsviz {

/// Time granularity placed on the x axis. `automatic` defers to recommend_unit.
enum class Unit { automatic, year, month, date, day, hour, minute };

constexpr std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::automatic: return "auto";
    case Unit::year: return "year";
    case Unit::month: return "month";
    case Unit::date: return "date";
    case Unit::day: return "day";
    case Unit::hour: return "hour";
    case Unit::minute: return "minute";
  }
  return "auto";
}

inline Unit parse_unit(std::string_view text) {
  for (auto u : {Unit::automatic, Unit::year, Unit::month, Unit::date, Unit::day, Unit::hour, Unit::minute}) {
    if (to_string(u) == text) return u;
  }
  throw Error(ErrorCode::invalid_argument, "unknown unit '" + std::string(text) + "'");
}

/// Tie-break preference: hour > date > day > month > minute > year.
inline constexpr std::array<Unit, 6> kUnitPreference = {Unit::hour, Unit::date, Unit::day,
                                                        Unit::month, Unit::minute, Unit::year};

constexpr std::size_t unit_preference_rank(Unit u) {
  for (std::size_t i = 0; i < kUnitPreference.size(); ++i) {
    if (kUnitPreference[i] == u) return i;
  }
  return kUnitPreference.size();
}

inline const std::string& unit_column(const CalendarColumns& names, Unit u) {
  switch (u) {
    case Unit::year: return names.year;
    case Unit::month: return names.month;
    case Unit::date: return names.date;
    case Unit::day: return names.day;
    case Unit::hour: return names.hour;
    case Unit::minute: return names.minute;
    case Unit::automatic: break;
  }
  throw Error(ErrorCode::invalid_argument, "'auto' has no column");
}

struct UnitScore {
  Unit unit = Unit::hour;
  std::string column;
  double score = 0.0;
  std::size_t distinct_values = 0;
};

/// Ranks calendar units by how strongly the target separates across their
/// values. Each unit is scored with separability_score on the table whose x
/// axis is the raw timestamp and whose hue is the unit: between-unit variance
/// of means over within-unit variance of per-timestamp means. Units with
/// fewer than two distinct values are skipped.
inline std::vector<UnitScore> recommend_unit(const Dataset& ds, std::string_view target, std::string_view time_col,
                                             const CalendarColumns& names = {}) {
  const Column& time = ds.column(time_col);
  const auto values = detail::target_values(ds, target);
  std::vector<UnitScore> out;
  for (Unit u : kUnitPreference) {
    const Column& col = ds.column(unit_column(names, u));
    if (col.distinct_count() < 2) continue;
    const auto table = detail::aggregate(time, &col, values, std::string(target));
    const auto s = separability_score(table);
    out.push_back({u, col.name(), s.score, col.distinct_count()});
  }
  if (out.empty()) throw Error(ErrorCode::no_usable_unit, "every calendar unit has fewer than two distinct values");
  std::stable_sort(out.begin(), out.end(), [](const UnitScore& a, const UnitScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return unit_preference_rank(a.unit) < unit_preference_rank(b.unit);
  });
  return out;
}

}  // namespace tsviz
