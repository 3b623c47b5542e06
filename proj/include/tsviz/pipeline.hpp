#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsviz/aggregation.hpp"
#include "tsviz/binning.hpp"
#include "tsviz/clean.hpp"
#include "tsviz/csv.hpp"
#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/plot.hpp"
#include "tsviz/report.hpp"
#include "tsviz/synth.hpp"
#include "tsviz/temporal.hpp"
#include "tsviz/units.hpp"

namespace tsviz {

struct PipelineConfig {
  std::filesystem::path input;
  std::string time_col = "time";
  std::string target_col;
  Unit unit = Unit::automatic;
  /// Empty means every eligible column.
  std::vector<std::string> hues;
  std::size_t max_series = 12;
  std::size_t top_k = 2;
  std::filesystem::path out_dir = "tsviz-out";
  ImputePolicy impute_policy{};
  std::string time_format{TimeFormat::kDefaultPattern};
  char delimiter = ',';
  /// When set, the input file is ignored and a synthetic dataset with this
  /// seed is analysed instead.
  std::optional<std::uint64_t> demo_seed;
  std::size_t demo_rows = 12 * 72 * 28;
};

/// Effect sizes used by `--seed-demo` and `tsviz synth`.
inline SynthSpec demo_synth_spec(std::size_t rows) {
  SynthSpec spec;
  spec.rows = rows;
  spec.base = 30.0;
  spec.month_trend = 1.5;
  spec.weekday_bump = 12.0;
  spec.hour_profile = rush_hour_profile(25.0);
  spec.noise_sd = 4.0;
  return spec;
}

namespace detail {

template <class Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(stage);
  }
}

class PipelineRun {
 public:
  explicit PipelineRun(const PipelineConfig& cfg) : cfg_(cfg), fmt_(cfg.time_format) {}

  Report run() {
    in_stage("config", [&] { check_config(); });
    in_stage("load", [&] { load(); });
    in_stage("clean", [&] { clean(); });
    in_stage("features", [&] { features(); });
    in_stage("unit", [&] { choose_unit(); });
    in_stage("step2", [&] { base_plot(); });
    in_stage("step3", [&] { categorical_hues(); });
    in_stage("step4", [&] { binned_hues(); });
    in_stage("step5", [&] { combine_top_hues(); });
    in_stage("flags", [&] { flag_bars(); });
    return std::move(report_);
  }

 private:
  void note(const std::string& stage, const std::string& text) { report_.decisions.push_back(stage + ": " + text); }

  void check_config() {
    if (cfg_.target_col.empty()) throw Error(ErrorCode::invalid_argument, "target column is required");
    if (cfg_.target_col == cfg_.time_col) throw Error(ErrorCode::invalid_argument, "target equals time column");
    if (cfg_.max_series == 0) throw Error(ErrorCode::non_positive, "max_series must be positive");
    if (cfg_.top_k == 0) throw Error(ErrorCode::non_positive, "top_k must be positive");
  }

  void load() {
    if (cfg_.demo_seed) {
      ds_ = synth_dataset(*cfg_.demo_seed, demo_synth_spec(cfg_.demo_rows));
      report_.input = "synthetic:seed=" + std::to_string(*cfg_.demo_seed);
      note("load", "synthetic demo dataset, seed " + std::to_string(*cfg_.demo_seed) + ", " +
                       std::to_string(cfg_.demo_rows) + " rows");
    } else {
      CsvOptions opts;
      opts.delimiter = cfg_.delimiter;
      opts.time_format = fmt_;
      // Check names before applying hints so a missing column reports clearly.
      Dataset raw = parse_csv(read_file(cfg_.input), opts);
      raw.column(cfg_.time_col);
      raw.column(cfg_.target_col);
      opts.hints[cfg_.time_col] = ColumnKind::timestamp;
      opts.hints[cfg_.target_col] = ColumnKind::continuous;
      ds_ = parse_csv(read_file(cfg_.input), opts);
      report_.input = cfg_.input.generic_string();
      note("load", "read " + report_.input + "; '" + cfg_.time_col + "' typed timestamp, '" + cfg_.target_col +
                       "' typed continuous, other kinds inferred");
    }
    ds_.column(cfg_.time_col);
    ds_.column(cfg_.target_col);
    report_.rows_loaded = ds_.row_count();
    report_.input_schema = ds_.schema();
    for (const auto& c : ds_.schema()) {
      if (c.name != cfg_.time_col && c.name != cfg_.target_col) input_features_.push_back(c);
    }
  }

  void clean() {
    report_.clean = validate(ds_, fmt_);
    report_.policy = cfg_.impute_policy;
    auto [cleaned, log] = impute(ds_, cfg_.impute_policy, fmt_);
    ds_ = std::move(cleaned);
    report_.impute_log = std::move(log);
    report_.rows_used = ds_.row_count();
    note("clean", "null spellings: empty, NULL, null, NaN, NA; inconsistent values treated as missing");
    note("clean", std::string("impute policy continuous=") + std::string(to_string(cfg_.impute_policy.continuous)) +
                      ", categorical=" + std::string(to_string(cfg_.impute_policy.categorical)) +
                      ", timestamp=" + std::string(to_string(cfg_.impute_policy.timestamp)) + "; " +
                      std::to_string(report_.impute_log.fills()) + " cells filled, " +
                      std::to_string(report_.impute_log.dropped_rows) + " rows dropped");
  }

  void features() {
    auto [with_features, names] = engineer_calendar_features(ds_, cfg_.time_col, fmt_);
    ds_ = std::move(with_features);
    names_ = names;
    note("features", "added " + names_.year + ", " + names_.month + ", " + names_.date + ", " + names_.hour + ", " +
                         names_.minute + ", " + names_.second + " (categorical), " + names_.weekday + " (weekend = " +
                         "Saturday/Sunday), " + names_.day + ", " + names_.pm + " (hour >= 12)");
  }

  void choose_unit() {
    report_.unit_auto = cfg_.unit == Unit::automatic;
    if (report_.unit_auto) {
      report_.unit_ranking = recommend_unit(ds_, cfg_.target_col, cfg_.time_col, names_);
      report_.chosen_unit = report_.unit_ranking.front().unit;
      note("step1", "unit chosen automatically by between/within variance score: " +
                        std::string(to_string(report_.chosen_unit)) + " (ties prefer hour > date > day > month > minute > year)");
    } else {
      report_.chosen_unit = cfg_.unit;
      note("step1", "unit fixed by configuration: " + std::string(to_string(cfg_.unit)));
    }
    report_.unit_column = unit_column(names_, report_.chosen_unit);
    unit_col_ = report_.unit_column;
  }

  void add(Artifact a, const std::string& stem, const std::string& ext) {
    a.file = (a.kind == "plot" ? "plots/" : "tables/") + namer_.claim(stem) + ext;
    report_.artifacts.push_back(std::move(a));
  }

  void add_table(const AggregationTable& t, const std::string& step) {
    const std::string hue = t.hue_name.value_or("");
    std::string stem = namer_.claim(slugify("table-" + t.x_name + (hue.empty() ? "" : "-by-" + hue)));
    Artifact means{"tables/" + stem + ".csv", "table", "means", step, t.x_name, hue,
                   "mean " + t.target_name, table_means_csv(t)};
    Artifact counts{"tables/" + stem + "_counts.csv", "table", "counts", step, t.x_name, hue,
                    "count " + t.target_name, table_counts_csv(t)};
    report_.artifacts.push_back(std::move(means));
    report_.artifacts.push_back(std::move(counts));
  }

  void add_line_plots(const AggregationTable& t, const std::string& step, std::size_t max_series) {
    const std::string hue = t.hue_name.value_or("");
    const auto parts = partition_series(t, max_series);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string title = "Mean " + t.target_name + " by " + t.x_name + (hue.empty() ? "" : ", hue " + hue);
      if (parts.size() > 1) {
        title += " (" + parts[i].series.front().name + " .. " + parts[i].series.back().name + ")";
      }
      const auto spec = make_line_plot(parts[i], title);
      add({{}, "plot", "line", step, t.x_name, hue, title, render_svg(spec)},
          slugify("line-" + t.x_name + (hue.empty() ? "" : "-by-" + hue)), ".svg");
    }
    if (parts.size() > 1) {
      note(step, hue + " has " + std::to_string(t.series.size()) + " categories; split into " +
                     std::to_string(parts.size()) + " plots of at most " + std::to_string(max_series) + " series");
    }
  }

  /// Series cap for a hue; the day-of-month hue is grouped in roughly ten-day
  /// blocks.
  std::size_t series_cap(const std::string& hue, std::size_t categories) const {
    if (hue != names_.date || categories <= cfg_.max_series) return cfg_.max_series;
    const std::size_t groups = std::max<std::size_t>(1, (categories + 5) / 10);
    return std::min(cfg_.max_series, (categories + groups - 1) / groups);
  }

  void base_plot() {
    const auto t = group_table(ds_, unit_col_, cfg_.target_col);
    note("step2", "base plot: mean " + cfg_.target_col + " per " + unit_col_ + " value (" +
                      std::to_string(t.x_values.size()) + " points)");
    add_line_plots(t, "step2", cfg_.max_series);
    add_table(t, "step2");
  }

  bool is_calendar(const std::string& name) const {
    for (const auto* n : {&names_.year, &names_.month, &names_.date, &names_.hour, &names_.minute, &names_.second,
                          &names_.weekday, &names_.day, &names_.pm}) {
      if (*n == name) return true;
    }
    return false;
  }

  /// Hue candidates in dataset order: explicit list, or every groupable
  /// column other than time, target and the unit column.
  std::vector<std::string> candidate_columns() const {
    std::vector<std::string> out;
    if (!cfg_.hues.empty()) {
      for (const auto& h : cfg_.hues) {
        ds_.column(h);
        out.push_back(h);
      }
      return out;
    }
    for (const auto& s : ds_.schema()) {
      if (s.name == cfg_.time_col || s.name == cfg_.target_col) continue;
      out.push_back(s.name);
    }
    return out;
  }

  bool usable_hue(const std::string& name, const char* step) {
    const Column& col = ds_.column(name);
    std::string reason;
    if (name == unit_col_) {
      reason = "is the x-axis unit";
    } else if (name == cfg_.target_col) {
      reason = "is the target";
    } else if (name == cfg_.time_col) {
      reason = "is the time column";
    } else if (col.kind() == ColumnKind::identifier) {
      reason = "is an identifier";
    } else if (col.distinct_count() < 2) {
      reason = "is constant";
    }
    if (!reason.empty()) {
      note(step, "hue candidate " + name + " skipped: " + reason);
      report_.hue_ranking.excluded.push_back({name, reason});
      return false;
    }
    return true;
  }

  void hue_plots(const std::string& hue, const char* step) {
    const auto t = hue_aggregate(ds_, unit_col_, hue, cfg_.target_col);
    add_line_plots(t, step, series_cap(hue, t.series.size()));
    add_table(t, step);
    ranked_candidates_.push_back(hue);
  }

  void categorical_hues() {
    for (const auto& name : candidate_columns()) {
      const Column& col = ds_.column(name);
      if (col.kind() == ColumnKind::continuous) continue;
      if (col.kind() == ColumnKind::timestamp) {
        note("step3", "hue candidate " + name + " skipped: timestamp column");
        continue;
      }
      if (!usable_hue(name, "step3")) continue;
      hue_plots(name, "step3");
    }
  }

  void binned_hues() {
    bool any = false;
    for (const auto& name : candidate_columns()) {
      const Column& col = ds_.column(name);
      if (col.kind() != ColumnKind::continuous || name == cfg_.target_col) continue;
      BinSpec spec;
      const std::string bin_name = unique_column_name(ds_, name + "_bin", "_");
      ds_ = bin_column(ds_, name, &spec);
      note("step4", name + " binned into " + std::to_string(spec.count) + " equal-width bins (Sturges, N = " +
                        std::to_string(ds_.row_count()) + ") as " + bin_name);
      any = true;
      if (!usable_hue(bin_name, "step4")) continue;
      hue_plots(bin_name, "step4");
    }
    if (!any) note("step4", "no continuous non-target feature to bin; the target is never binned");
  }

  void combine_top_hues() {
    report_.hue_x = unit_col_;
    if (ranked_candidates_.empty()) {
      note("step5", "no usable hue candidates; ranking and combination skipped");
      return;
    }
    auto ranking = rank_hues(ds_, unit_col_, cfg_.target_col, ranked_candidates_);
    report_.hue_ranking.ranked = std::move(ranking.ranked);
    for (auto& e : ranking.excluded) report_.hue_ranking.excluded.push_back(std::move(e));
    const auto& ranked = report_.hue_ranking.ranked;

    const std::size_t k = std::min(cfg_.top_k, ranked.size());
    if (k < 2) {
      note("step5", "combination skipped: top_k = " + std::to_string(cfg_.top_k) + " with " +
                        std::to_string(ranked.size()) + " ranked hue(s)");
    } else {
      for (std::size_t i = 0; i < k; ++i) report_.combination.push_back(ranked[i].hue_name);
      std::string combined;
      ds_ = combine_categories(ds_, report_.combination, &combined);
      report_.combination_column = combined;
      note("step5", "combined top " + std::to_string(k) + " hues by separability: " + combined);
      const auto t = hue_aggregate(ds_, unit_col_, combined, cfg_.target_col);
      add_line_plots(t, "step5", cfg_.max_series);
      add_table(t, "step5");
    }

    std::vector<std::string> pivot_cols;
    for (const auto& s : ranked) {
      const bool original = std::any_of(input_features_.begin(), input_features_.end(),
                                        [&](const ColumnSchema& c) { return c.name == s.hue_name; });
      if (original && pivot_cols.size() < std::max<std::size_t>(2, cfg_.top_k)) pivot_cols.push_back(s.hue_name);
    }
    if (pivot_cols.size() < 2) {
      note("step5", "pivot skipped: fewer than two non-target categorical input features");
      return;
    }
    report_.pivot_columns = pivot_cols;
    const auto p = pivot_table(ds_, unit_col_, pivot_cols, cfg_.target_col);
    const std::string combo = combined_column_name(pivot_cols);
    const std::string stem = namer_.claim(slugify("pivot-" + unit_col_ + "-by-" + combo));
    report_.artifacts.push_back({"tables/" + stem + ".csv", "table", "pivot_means", "step5", unit_col_, combo,
                                 "mean " + cfg_.target_col, pivot_means_csv(p)});
    report_.artifacts.push_back({"tables/" + stem + "_counts.csv", "table", "pivot_counts", "step5", unit_col_,
                                 combo, "count " + cfg_.target_col, pivot_counts_csv(p)});
    note("step5", "pivot of " + unit_col_ + " rows by combinations of " + combo + " (highest-ranked input features)");
  }

  void flag_bars() {
    std::size_t n = 0;
    for (const auto& s : ds_.schema()) {
      if (s.kind != ColumnKind::binary_flag || s.name == cfg_.target_col) continue;
      const auto groups = group_mean(ds_, s.name, cfg_.target_col);
      const std::string title = "Mean " + cfg_.target_col + " by " + s.name;
      const auto spec = make_bar_plot(groups, title, s.name, "mean " + cfg_.target_col);
      add({{}, "plot", "bar", "flags", s.name, "", title, render_svg(spec)}, slugify("bar-" + s.name), ".svg");
      ++n;
    }
    note("flags", std::to_string(n) + " binary flag bar chart(s)");
  }

  const PipelineConfig& cfg_;
  TimeFormat fmt_;
  Dataset ds_;
  CalendarColumns names_;
  std::string unit_col_;
  std::vector<ColumnSchema> input_features_;
  std::vector<std::string> ranked_candidates_;
  FileNamer namer_;
  Report report_;
};

}  // namespace detail

/// Runs the five-step method end to end and returns the report with every
/// artifact rendered in memory. Errors carry the stage they came from.
inline Report run_pipeline(const PipelineConfig& config) { return detail::PipelineRun(config).run(); }

/// run_pipeline followed by emit_report into config.out_dir.
inline Report run_and_emit(const PipelineConfig& config) {
  Report r = run_pipeline(config);
  detail::in_stage("emit", [&] { emit_report(r, config.out_dir); });
  return r;
}

}  // namespace tsviz
