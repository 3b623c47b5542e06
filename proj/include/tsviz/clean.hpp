#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"
#include "tsviz/timestamp.hpp"

namespace tsviz {

struct ColumnCleanStats {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;
  std::size_t null_count = 0;
  /// Non-null values that fail to parse under the column's kind.
  std::size_t inconsistent_count = 0;

  friend bool operator==(const ColumnCleanStats&, const ColumnCleanStats&) = default;
};

struct CleanReport {
  std::size_t total_rows = 0;
  std::vector<ColumnCleanStats> columns;

  bool clean() const {
    return std::all_of(columns.begin(), columns.end(), [](const auto& c) {
      return c.null_count == 0 && c.inconsistent_count == 0;
    });
  }

  friend bool operator==(const CleanReport&, const CleanReport&) = default;
};

/// Whether a non-null text conforms to `kind`. Identifier and categorical
/// values always conform.
inline bool conforms(std::string_view text, ColumnKind kind, const TimeFormat& fmt) {
  switch (kind) {
    case ColumnKind::timestamp: return try_parse_timestamp(text, fmt).has_value();
    case ColumnKind::continuous: return parse_number(text).has_value();
    case ColumnKind::binary_flag: {
      auto v = parse_number(text);
      return v && (*v == 0.0 || *v == 1.0);
    }
    case ColumnKind::identifier:
    case ColumnKind::categorical: return true;
  }
  return true;
}

namespace detail {

/// Per dictionary entry: does it conform to the column kind.
inline std::vector<bool> conforming_entries(const Column& col, const TimeFormat& fmt) {
  std::vector<bool> ok(col.distinct_count());
  for (std::size_t i = 0; i < ok.size(); ++i) ok[i] = conforms(col.dictionary()[i], col.kind(), fmt);
  return ok;
}

}  // namespace detail

inline CleanReport validate(const Dataset& ds, const TimeFormat& fmt = TimeFormat()) {
  CleanReport report;
  report.total_rows = ds.row_count();
  for (std::size_t ci = 0; ci < ds.column_count(); ++ci) {
    const Column& col = ds.column(ci);
    const auto ok = detail::conforming_entries(col, fmt);
    ColumnCleanStats stats{col.name(), col.kind(), col.null_count(), 0};
    for (auto code : col.codes()) {
      if (code != Column::kNull && !ok[code]) ++stats.inconsistent_count;
    }
    report.columns.push_back(std::move(stats));
  }
  return report;
}

enum class ContinuousStrategy { mean, median, fail };
enum class CategoricalStrategy { mode, fail };
enum class TimestampStrategy { drop_row, fail };

constexpr std::string_view to_string(ContinuousStrategy s) {
  return s == ContinuousStrategy::mean ? "mean" : s == ContinuousStrategy::median ? "median" : "fail";
}
constexpr std::string_view to_string(CategoricalStrategy s) {
  return s == CategoricalStrategy::mode ? "mode" : "fail";
}
constexpr std::string_view to_string(TimestampStrategy s) {
  return s == TimestampStrategy::drop_row ? "drop_row" : "fail";
}

/// Binary-flag and identifier columns follow the categorical strategy.
struct ImputePolicy {
  ContinuousStrategy continuous = ContinuousStrategy::mean;
  CategoricalStrategy categorical = CategoricalStrategy::mode;
  TimestampStrategy timestamp = TimestampStrategy::drop_row;
};

struct ImputeEntry {
  enum class Action { fill, drop };
  std::string column;
  /// Row index in the dataset passed to impute().
  std::size_t row = 0;
  Action action = Action::fill;
  /// Filled text; empty for drops.
  std::string value;
  /// "null" or "inconsistent".
  std::string reason;
};

struct ImputeLog {
  std::vector<ImputeEntry> entries;
  std::size_t dropped_rows = 0;

  std::size_t fills() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) {
      return e.action == ImputeEntry::Action::fill;
    }));
  }
};

/// Produces a null-free dataset. Inconsistent values are treated as missing.
/// Rows with a missing timestamp are dropped first; fill statistics are then
/// taken over the surviving non-missing values of each column.
inline std::pair<Dataset, ImputeLog> impute(const Dataset& ds, const ImputePolicy& policy = {},
                                            const TimeFormat& fmt = TimeFormat()) {
  ImputeLog log;
  const std::size_t n = ds.row_count();
  std::vector<std::vector<bool>> bad(ds.column_count());
  for (std::size_t ci = 0; ci < ds.column_count(); ++ci) {
    const Column& col = ds.column(ci);
    const auto ok = detail::conforming_entries(col, fmt);
    auto& b = bad[ci];
    b.assign(n, false);
    std::size_t bad_count = 0;
    for (std::size_t r = 0; r < n; ++r) {
      auto code = col.code(r);
      b[r] = code == Column::kNull || !ok[code];
      bad_count += b[r];
    }
    if (n > 0 && bad_count == n) throw Error(ErrorCode::imputation_impossible, col.name());
  }

  auto reason_of = [&](const Column& col, std::size_t r) {
    return col.is_null(r) ? std::string("null") : std::string("inconsistent");
  };

  std::vector<bool> drop(n, false);
  for (std::size_t ci = 0; ci < ds.column_count(); ++ci) {
    const Column& col = ds.column(ci);
    if (col.kind() != ColumnKind::timestamp) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (!bad[ci][r]) continue;
      if (policy.timestamp == TimestampStrategy::fail) throw Error(ErrorCode::policy_fail, col.name());
      if (!drop[r]) {
        drop[r] = true;
        ++log.dropped_rows;
      }
      log.entries.push_back({col.name(), r, ImputeEntry::Action::drop, {}, reason_of(col, r)});
    }
  }

  std::vector<Column> out_cols;
  for (std::size_t ci = 0; ci < ds.column_count(); ++ci) {
    const Column& col = ds.column(ci);
    const auto& b = bad[ci];
    std::string fill;
    bool needs_fill = false;
    for (std::size_t r = 0; r < n; ++r) needs_fill |= (b[r] && !drop[r]);

    if (needs_fill) {
      if (col.kind() == ColumnKind::continuous) {
        if (policy.continuous == ContinuousStrategy::fail) throw Error(ErrorCode::policy_fail, col.name());
        const auto values = col.numeric_values();
        std::vector<double> present;
        for (std::size_t r = 0; r < n; ++r) {
          if (!b[r] && !drop[r]) present.push_back(values[r]);
        }
        if (present.empty()) throw Error(ErrorCode::imputation_impossible, col.name());
        double stat = 0.0;
        if (policy.continuous == ContinuousStrategy::mean) {
          for (double v : present) stat += v;
          stat /= static_cast<double>(present.size());
        } else {
          std::sort(present.begin(), present.end());
          const std::size_t m = present.size() / 2;
          stat = present.size() % 2 ? present[m] : (present[m - 1] + present[m]) / 2.0;
        }
        fill = format_shortest(stat);
      } else {
        if (policy.categorical == CategoricalStrategy::fail) throw Error(ErrorCode::policy_fail, col.name());
        std::vector<std::size_t> freq(col.distinct_count(), 0);
        for (std::size_t r = 0; r < n; ++r) {
          if (!b[r] && !drop[r]) ++freq[col.code(r)];
        }
        std::size_t best = 0;
        bool found = false;
        for (std::size_t i = 0; i < freq.size(); ++i) {
          if (freq[i] == 0) continue;
          if (!found || freq[i] > freq[best] ||
              (freq[i] == freq[best] && col.dictionary()[i] < col.dictionary()[best])) {
            best = i;
            found = true;
          }
        }
        if (!found) throw Error(ErrorCode::imputation_impossible, col.name());
        fill = col.dictionary()[best];
      }
    }

    ColumnBuilder builder;
    builder.reserve(n - log.dropped_rows);
    const bool is_flag = col.kind() == ColumnKind::binary_flag;
    for (std::size_t r = 0; r < n; ++r) {
      if (drop[r]) continue;
      std::string_view text = col.text(r);
      if (b[r]) {
        log.entries.push_back({col.name(), r, ImputeEntry::Action::fill, fill, reason_of(col, r)});
        text = fill;
      }
      if (is_flag) {
        builder.push(*parse_number(text) == 0.0 ? std::string_view("0") : std::string_view("1"));
      } else {
        builder.push(text);
      }
    }
    out_cols.push_back(std::move(builder).build(col.name(), col.kind()));
  }
  if (log.dropped_rows == n && n > 0) throw Error(ErrorCode::empty_input, "every row was dropped");

  std::stable_sort(log.entries.begin(), log.entries.end(), [](const auto& a, const auto& b) {
    return a.row < b.row;
  });
  return {Dataset(std::move(out_cols)), std::move(log)};
}

}  // namespace tsviz
