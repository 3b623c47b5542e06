// tsviz: command-line front end for the time-series visualization pipeline.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsviz/tsviz.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

int exit_code_for(const tsviz::Error& e) {
  return e.code() == tsviz::ErrorCode::io_error ? kExitIo : kExitInput;
}

tsviz::ImputePolicy parse_policy(const std::string& continuous, const std::string& categorical,
                                 const std::string& timestamp) {
  tsviz::ImputePolicy p;
  if (continuous == "median") {
    p.continuous = tsviz::ContinuousStrategy::median;
  } else if (continuous == "fail") {
    p.continuous = tsviz::ContinuousStrategy::fail;
  }
  if (categorical == "fail") p.categorical = tsviz::CategoricalStrategy::fail;
  if (timestamp == "fail") p.timestamp = tsviz::TimestampStrategy::fail;
  return p;
}

void print_inspect(const tsviz::Dataset& ds, const tsviz::CleanReport& report) {
  std::printf("rows: %zu\n", report.total_rows);
  std::printf("%-24s %-12s %10s %10s %14s\n", "column", "kind", "distinct", "nulls", "inconsistent");
  const auto schema = ds.schema();
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    const auto& c = report.columns[i];
    std::printf("%-24s %-12s %10zu %10zu %14zu\n", c.name.c_str(), std::string(tsviz::to_string(c.kind)).c_str(),
                schema[i].distinct_count, c.null_count, c.inconsistent_count);
  }
  std::printf("status: %s\n", report.clean() ? "clean" : "needs imputation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploratory visualization of timestamped CSV data"};
  app.require_subcommand(1);

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run the five-step visualization method");
  std::string input, time_col = "time", target, unit = "auto", hue_list, time_format{tsviz::TimeFormat::kDefaultPattern};
  std::string out_dir = "tsviz-out";
  std::size_t max_series = 12, top_k = 2, demo_rows = tsviz::PipelineConfig{}.demo_rows;
  std::optional<std::uint64_t> seed_demo;
  std::string impute_continuous = "mean", impute_categorical = "mode", impute_timestamp = "drop_row";
  char delimiter = ',';
  pipeline->add_option("--input", input, "Input CSV file");
  pipeline->add_option("--time-col", time_col, "Timestamp column")->capture_default_str();
  pipeline->add_option("--target", target, "Target (y-axis) column");
  pipeline->add_option("--unit", unit, "x-axis unit")
      ->check(CLI::IsMember({"auto", "year", "month", "date", "day", "hour", "minute"}))
      ->capture_default_str();
  pipeline->add_option("--hue", hue_list, "Comma-separated hue columns (default: all eligible)");
  pipeline->add_option("--max-series", max_series, "Series per plot before splitting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline->add_option("--top-k", top_k, "Top-ranked hues to combine")->check(CLI::PositiveNumber)->capture_default_str();
  pipeline->add_option("--out", out_dir, "Output directory")->capture_default_str();
  pipeline->add_option("--time-format", time_format, "Timestamp layout (YYYY MM DD hh mm ss)")->capture_default_str();
  pipeline->add_option("--seed-demo", seed_demo, "Analyse a synthetic dataset with this seed instead of --input");
  pipeline->add_option("--demo-rows", demo_rows, "Rows in the synthetic demo dataset")->capture_default_str();
  pipeline->add_option("--delimiter", delimiter, "CSV field delimiter")->capture_default_str();
  pipeline->add_option("--impute-continuous", impute_continuous)
      ->check(CLI::IsMember({"mean", "median", "fail"}))
      ->capture_default_str();
  pipeline->add_option("--impute-categorical", impute_categorical)
      ->check(CLI::IsMember({"mode", "fail"}))
      ->capture_default_str();
  pipeline->add_option("--impute-timestamp", impute_timestamp)
      ->check(CLI::IsMember({"drop_row", "fail"}))
      ->capture_default_str();

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Print the schema and clean report of a CSV file");
  std::string inspect_file;
  inspect->add_option("file", inspect_file, "CSV file")->required();
  inspect->add_option("--time-format", time_format, "Timestamp layout")->capture_default_str();
  inspect->add_option("--delimiter", delimiter, "CSV field delimiter")->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic traffic-congestion style CSV");
  std::uint64_t synth_seed = 1;
  std::size_t synth_rows = 10000;
  std::string synth_out;
  double weekday_bump = tsviz::demo_synth_spec(1).weekday_bump;
  double month_trend = tsviz::demo_synth_spec(1).month_trend;
  double hour_amplitude = 25.0;
  double noise_sd = tsviz::demo_synth_spec(1).noise_sd;
  bool coin = false;
  synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
  synth->add_option("--rows", synth_rows, "Row count")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--out", synth_out, "Output CSV path")->required();
  synth->add_option("--weekday-bump", weekday_bump)->capture_default_str();
  synth->add_option("--month-trend", month_trend)->capture_default_str();
  synth->add_option("--hour-amplitude", hour_amplitude)->capture_default_str();
  synth->add_option("--noise", noise_sd, "Noise standard deviation")->capture_default_str();
  synth->add_flag("--coin", coin, "Add an uninformative random 0/1 column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*pipeline) {
      tsviz::PipelineConfig cfg;
      cfg.demo_seed = seed_demo;
      if (!seed_demo && input.empty()) {
        std::cerr << "error: --input is required unless --seed-demo is given\n";
        return kExitInput;
      }
      if (target.empty()) {
        if (!seed_demo) {
          std::cerr << "error: --target is required\n";
          return kExitInput;
        }
        target = "congestion";
      }
      cfg.input = input;
      cfg.time_col = time_col;
      cfg.target_col = target;
      cfg.unit = tsviz::parse_unit(unit);
      std::stringstream hs(hue_list);
      for (std::string h; std::getline(hs, h, ',');) {
        if (!h.empty()) cfg.hues.push_back(h);
      }
      cfg.max_series = max_series;
      cfg.top_k = top_k;
      cfg.out_dir = out_dir;
      cfg.time_format = time_format;
      cfg.delimiter = delimiter;
      cfg.demo_rows = demo_rows;
      cfg.impute_policy = parse_policy(impute_continuous, impute_categorical, impute_timestamp);
      const auto report = tsviz::run_and_emit(cfg);
      std::printf("unit: %s\n", std::string(tsviz::to_string(report.chosen_unit)).c_str());
      if (!report.hue_ranking.ranked.empty()) {
        std::printf("top hue: %s (score %s)\n", report.hue_ranking.ranked.front().hue_name.c_str(),
                    tsviz::score_text(report.hue_ranking.ranked.front().score).c_str());
      }
      std::printf("wrote %zu artifacts and report.json to %s\n", report.artifacts.size(), out_dir.c_str());
    } else if (*inspect) {
      tsviz::CsvOptions opts;
      opts.delimiter = delimiter;
      opts.time_format = tsviz::TimeFormat(time_format);
      const auto ds = tsviz::load_csv(inspect_file, opts);
      print_inspect(ds, tsviz::validate(ds, opts.time_format));
    } else if (*synth) {
      tsviz::SynthSpec spec = tsviz::demo_synth_spec(synth_rows);
      spec.weekday_bump = weekday_bump;
      spec.month_trend = month_trend;
      spec.hour_profile = tsviz::rush_hour_profile(hour_amplitude);
      spec.noise_sd = noise_sd;
      spec.random_flag = coin;
      const auto ds = tsviz::synth_dataset(synth_seed, spec);
      std::ofstream out(synth_out, std::ios::binary | std::ios::trunc);
      if (!out) throw tsviz::Error(tsviz::ErrorCode::io_error, "cannot write " + synth_out);
      tsviz::write_csv(ds, out);
      if (!out) throw tsviz::Error(tsviz::ErrorCode::io_error, "short write to " + synth_out);
      std::printf("wrote %zu rows to %s\n", ds.row_count(), synth_out.c_str());
    }
  } catch (const tsviz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}
