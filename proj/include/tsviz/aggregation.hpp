#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsviz/categories.hpp"
#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"

namespace tsviz {

struct GroupStat {
  std::string key;
  double mean = 0.0;
  std::size_t count = 0;
};

/// One (x, hue) cell. `mean` is absent exactly when `count` is zero.
struct Cell {
  std::optional<double> mean;
  std::size_t count = 0;
};

struct Series {
  std::string name;
  std::vector<Cell> cells;  // aligned with AggregationTable::x_values
};

/// Target means per x value, split into one series per hue category (a
/// single series named after the target when there is no hue).
struct AggregationTable {
  std::string x_name;
  std::string target_name;
  std::vector<std::string> x_values;
  std::optional<std::string> hue_name;
  std::vector<Series> series;

  const Series* find_series(std::string_view name) const {
    for (const auto& s : series) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

struct PivotTable {
  std::string row_name;
  std::string target_name;
  std::vector<std::string> combo_columns;
  std::vector<std::string> row_values;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Cell>> cells;  // [row][col]
};

struct SeparabilityScore {
  std::string hue_name;
  /// Between-series over within-series variance; +inf when the series are
  /// internally flat but differ from each other.
  double score = 0.0;
  std::size_t series_count = 0;

  bool infinite() const { return std::isinf(score); }
};

struct HueExclusion {
  std::string column;
  std::string reason;
};

struct HueRanking {
  std::vector<SeparabilityScore> ranked;
  std::vector<HueExclusion> excluded;
};

namespace detail {

inline std::vector<double> target_values(const Dataset& ds, std::string_view target) {
  const Column& col = ds.column(target);
  if (col.kind() != ColumnKind::continuous) {
    throw Error(ErrorCode::wrong_kind, std::string(target) + " is " + std::string(to_string(col.kind())) +
                                           ", expected continuous target");
  }
  auto values = col.numeric_values();
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorCode::wrong_kind, std::string(target) + " has missing or non-numeric values");
  }
  return values;
}

inline const Column& key_column(const Dataset& ds, std::string_view name) {
  const Column& col = ds.column(name);
  if (!is_groupable(col.kind())) {
    throw Error(ErrorCode::wrong_kind, std::string(name) + " is " + std::string(to_string(col.kind())) +
                                           ", expected categorical or binary_flag");
  }
  return col;
}

/// Single-pass sum/count over (key, hue) codes, then canonical ordering of
/// both axes. No kind checks; callers enforce them.
inline AggregationTable aggregate(const Column& key, const Column* hue, std::span<const double> target,
                                  std::string target_name) {
  if (key.null_count() > 0 || (hue && hue->null_count() > 0)) {
    throw Error(ErrorCode::invalid_argument, "grouping column contains nulls; impute first");
  }
  const std::size_t n_keys = key.distinct_count();
  const std::size_t n_hues = hue ? hue->distinct_count() : 1;
  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  const bool dense = n_keys * n_hues <= (std::size_t{1} << 22);
  std::vector<Acc> grid(dense ? n_keys * n_hues : 0);
  std::unordered_map<std::uint64_t, Acc> sparse;
  for (std::size_t r = 0; r < target.size(); ++r) {
    const std::size_t k = static_cast<std::size_t>(key.code(r));
    const std::size_t h = hue ? static_cast<std::size_t>(hue->code(r)) : 0;
    Acc& a = dense ? grid[k * n_hues + h] : sparse[static_cast<std::uint64_t>(k) * n_hues + h];
    a.sum += target[r];
    ++a.count;
  }
  auto acc_at = [&](std::size_t k, std::size_t h) -> Acc {
    if (dense) return grid[k * n_hues + h];
    auto it = sparse.find(static_cast<std::uint64_t>(k) * n_hues + h);
    return it == sparse.end() ? Acc{} : it->second;
  };

  std::vector<std::size_t> key_order(n_keys), hue_order(n_hues);
  {
    auto rank = canonical_ranks(key.dictionary());
    for (std::size_t i = 0; i < n_keys; ++i) key_order[rank[i]] = i;
  }
  if (hue) {
    auto rank = canonical_ranks(hue->dictionary());
    for (std::size_t i = 0; i < n_hues; ++i) hue_order[rank[i]] = i;
  }

  AggregationTable t;
  t.x_name = key.name();
  t.target_name = std::move(target_name);
  if (hue) t.hue_name = hue->name();
  for (auto k : key_order) t.x_values.push_back(key.dictionary()[k]);
  for (auto h : hue_order) {
    Series s;
    s.name = hue ? hue->dictionary()[h] : t.target_name;
    s.cells.reserve(n_keys);
    for (auto k : key_order) {
      Acc a = acc_at(k, h);
      Cell c;
      c.count = a.count;
      if (a.count > 0) c.mean = a.sum / static_cast<double>(a.count);
      s.cells.push_back(c);
    }
    t.series.push_back(std::move(s));
  }
  return t;
}

}  // namespace detail

/// Unsplit table: one series named after the target.
inline AggregationTable group_table(const Dataset& ds, std::string_view key_col, std::string_view target) {
  const Column& key = detail::key_column(ds, key_col);
  const auto values = detail::target_values(ds, target);
  return detail::aggregate(key, nullptr, values, std::string(target));
}

/// Mean target per key value, keys in canonical order.
inline std::vector<GroupStat> group_mean(const Dataset& ds, std::string_view key_col, std::string_view target) {
  const auto t = group_table(ds, key_col, target);
  std::vector<GroupStat> out;
  for (std::size_t i = 0; i < t.x_values.size(); ++i) {
    const Cell& c = t.series.front().cells[i];
    out.push_back({t.x_values[i], c.mean.value_or(0.0), c.count});
  }
  return out;
}

inline AggregationTable hue_aggregate(const Dataset& ds, std::string_view x_col, std::string_view hue_col,
                                      std::string_view target) {
  if (x_col == hue_col) throw Error(ErrorCode::same_column, std::string(x_col));
  const Column& key = detail::key_column(ds, x_col);
  const Column& hue = detail::key_column(ds, hue_col);
  const auto values = detail::target_values(ds, target);
  return detail::aggregate(key, &hue, values, std::string(target));
}

inline std::string combined_column_name(std::span<const std::string> cols) {
  std::string name;
  for (const auto& c : cols) {
    if (!name.empty()) name += '+';
    name += c;
  }
  return name;
}

/// Adds `<c1>+<c2>+...` holding "(v1,v2,...)" per row. `added_name` receives
/// the column name actually used.
inline Dataset combine_categories(const Dataset& ds, std::span<const std::string> cols,
                                  std::string* added_name = nullptr) {
  if (cols.size() < 2) throw Error(ErrorCode::invalid_argument, "combine needs at least two columns");
  std::vector<const Column*> sources;
  for (const auto& name : cols) {
    const Column& c = detail::key_column(ds, name);
    if (c.null_count() > 0) throw Error(ErrorCode::invalid_argument, name + " contains nulls");
    sources.push_back(&c);
  }
  ColumnBuilder b;
  b.reserve(ds.row_count());
  std::string label;
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    label = "(";
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (i) label += ',';
      label += sources[i]->text(r);
    }
    label += ')';
    b.push(std::string_view{label});
  }
  std::string name = unique_column_name(ds, combined_column_name(cols), "_");
  if (added_name) *added_name = name;
  return ds.with_column(std::move(b).build(std::move(name), ColumnKind::categorical));
}

inline PivotTable pivot_table(const Dataset& ds, std::string_view row_col, std::span<const std::string> combo_cols,
                              std::string_view target) {
  std::string combined;
  Dataset with_combo = combine_categories(ds, combo_cols, &combined);
  const AggregationTable t = hue_aggregate(with_combo, row_col, combined, target);
  PivotTable p;
  p.row_name = std::string(row_col);
  p.target_name = std::string(target);
  p.combo_columns.assign(combo_cols.begin(), combo_cols.end());
  p.row_values = t.x_values;
  for (const auto& s : t.series) p.col_labels.push_back(s.name);
  p.cells.assign(t.x_values.size(), std::vector<Cell>(t.series.size()));
  for (std::size_t c = 0; c < t.series.size(); ++c) {
    for (std::size_t r = 0; r < t.x_values.size(); ++r) p.cells[r][c] = t.series[c].cells[r];
  }
  return p;
}

/// Between/within variance ratio of the hue series. Each series' present
/// per-x means form a group weighted by cell counts:
///   B = count-weighted variance of series grand means about the global mean
///   W = count-weighted mean of each series' variance of per-x means
/// W = 0 with B > 0 gives +inf; B = 0 gives 0. Values below rounding noise
/// relative to the data magnitude count as zero.
inline SeparabilityScore separability_score(const AggregationTable& table) {
  struct Group {
    double n = 0.0, mean = 0.0, var = 0.0;
  };
  std::vector<Group> groups;
  for (const auto& s : table.series) {
    Group g;
    for (const auto& c : s.cells) {
      if (c.count == 0) continue;
      g.n += static_cast<double>(c.count);
      g.mean += static_cast<double>(c.count) * *c.mean;
    }
    if (g.n == 0.0) continue;
    g.mean /= g.n;
    for (const auto& c : s.cells) {
      if (c.count == 0) continue;
      const double d = *c.mean - g.mean;
      g.var += static_cast<double>(c.count) * d * d;
    }
    g.var /= g.n;
    groups.push_back(g);
  }
  if (groups.size() < 2) {
    throw Error(ErrorCode::too_few_series,
                (table.hue_name ? *table.hue_name : table.x_name) + " has " + std::to_string(groups.size()) +
                    " non-empty series");
  }
  double total = 0.0, global = 0.0;
  for (const auto& g : groups) {
    total += g.n;
    global += g.n * g.mean;
  }
  global /= total;
  double between = 0.0, within = 0.0;
  for (const auto& g : groups) {
    between += g.n * (g.mean - global) * (g.mean - global);
    within += g.n * g.var;
  }
  between /= total;
  within /= total;

  const double noise = 1e-20 * (global * global + between + within);
  SeparabilityScore out;
  out.hue_name = table.hue_name ? *table.hue_name : table.x_name;
  out.series_count = groups.size();
  if (between <= noise) {
    out.score = 0.0;
  } else if (within <= noise) {
    out.score = std::numeric_limits<double>::infinity();
  } else {
    out.score = between / within;
  }
  return out;
}

/// Descending score; ties prefer fewer series, then column name.
inline bool ranks_before(const SeparabilityScore& a, const SeparabilityScore& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.series_count != b.series_count) return a.series_count < b.series_count;
  return a.hue_name < b.hue_name;
}

/// Scores every usable candidate as a hue over `x_col`. The x column, the
/// target, identifiers, non-categorical columns and constant columns are
/// excluded and reported.
inline HueRanking rank_hues(const Dataset& ds, std::string_view x_col, std::string_view target,
                            std::span<const std::string> candidates) {
  HueRanking out;
  for (const auto& name : candidates) {
    const Column& col = ds.column(name);
    std::string reason;
    if (name == x_col) {
      reason = "x axis column";
    } else if (name == target) {
      reason = "target column";
    } else if (col.kind() == ColumnKind::identifier) {
      reason = "identifier";
    } else if (!is_groupable(col.kind())) {
      reason = std::string(to_string(col.kind())) + " column (bin before use as hue)";
    } else if (col.distinct_count() < 2) {
      reason = "constant column";
    }
    if (!reason.empty()) {
      out.excluded.push_back({name, std::move(reason)});
      continue;
    }
    out.ranked.push_back(separability_score(hue_aggregate(ds, x_col, name, target)));
  }
  if (out.ranked.empty()) throw Error(ErrorCode::empty_candidates, "no usable hue candidate");
  std::sort(out.ranked.begin(), out.ranked.end(), ranks_before);
  return out;
}

/// Splits the series (already in canonical order) into consecutive chunks of
/// at most `max_series`; each chunk keeps every x value.
inline std::vector<AggregationTable> partition_series(const AggregationTable& table, std::size_t max_series) {
  if (max_series == 0) throw Error(ErrorCode::non_positive, "max_series must be positive");
  std::vector<AggregationTable> parts;
  for (std::size_t start = 0; start < table.series.size(); start += max_series) {
    AggregationTable part = table;
    const std::size_t end = std::min(start + max_series, table.series.size());
    part.series.assign(table.series.begin() + static_cast<std::ptrdiff_t>(start),
                       table.series.begin() + static_cast<std::ptrdiff_t>(end));
    parts.push_back(std::move(part));
  }
  if (parts.empty()) parts.push_back(table);
  return parts;
}

/// Means as CSV: x column then one column per series, 3 fractional digits,
/// empty where the cell is absent.
inline std::string table_means_csv(const AggregationTable& t) {
  std::string out = csv_field(t.x_name);
  for (const auto& s : t.series) out += "," + csv_field(s.name);
  out += '\n';
  for (std::size_t i = 0; i < t.x_values.size(); ++i) {
    out += csv_field(t.x_values[i]);
    for (const auto& s : t.series) {
      out += ',';
      if (s.cells[i].mean) out += format_fixed3(*s.cells[i].mean);
    }
    out += '\n';
  }
  return out;
}

inline std::string table_counts_csv(const AggregationTable& t) {
  std::string out = csv_field(t.x_name);
  for (const auto& s : t.series) out += "," + csv_field(s.name);
  out += '\n';
  for (std::size_t i = 0; i < t.x_values.size(); ++i) {
    out += csv_field(t.x_values[i]);
    for (const auto& s : t.series) out += "," + std::to_string(s.cells[i].count);
    out += '\n';
  }
  return out;
}

inline std::string pivot_means_csv(const PivotTable& p) {
  std::string out = csv_field(p.row_name);
  for (const auto& c : p.col_labels) out += "," + csv_field(c);
  out += '\n';
  for (std::size_t r = 0; r < p.row_values.size(); ++r) {
    out += csv_field(p.row_values[r]);
    for (const auto& cell : p.cells[r]) {
      out += ',';
      if (cell.mean) out += format_fixed3(*cell.mean);
    }
    out += '\n';
  }
  return out;
}

inline std::string pivot_counts_csv(const PivotTable& p) {
  std::string out = csv_field(p.row_name);
  for (const auto& c : p.col_labels) out += "," + csv_field(c);
  out += '\n';
  for (std::size_t r = 0; r < p.row_values.size(); ++r) {
    out += csv_field(p.row_values[r]);
    for (const auto& cell : p.cells[r]) out += "," + std::to_string(cell.count);
    out += '\n';
  }
  return out;
}

}  // namespace tsviz
