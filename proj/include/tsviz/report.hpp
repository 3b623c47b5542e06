#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tsviz/aggregation.hpp"
#include "tsviz/clean.hpp"
#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"
#include "tsviz/units.hpp"

namespace tsviz {

/// One emitted file. `file` is relative to the output directory.
struct Artifact {
  std::string file;
  std::string kind;   // "plot" | "table"
  std::string chart;  // line | bar | means | counts | pivot_means | pivot_counts
  std::string step;
  std::string x;
  std::string hue;
  std::string title;
  std::string content;
};

struct Report {
  std::string input;
  std::size_t rows_loaded = 0;
  std::size_t rows_used = 0;
  std::vector<ColumnSchema> input_schema;
  CleanReport clean;
  ImputePolicy policy;
  ImputeLog impute_log;
  bool unit_auto = true;
  Unit chosen_unit = Unit::hour;
  std::string unit_column;
  std::vector<UnitScore> unit_ranking;
  std::string hue_x;
  HueRanking hue_ranking;
  std::vector<std::string> combination;
  std::string combination_column;
  std::vector<std::string> pivot_columns;
  std::vector<std::string> decisions;
  std::vector<Artifact> artifacts;
};

/// Lowercase ASCII slug: alphanumerics kept, every other run becomes '-'.
inline std::string slugify(std::string_view text) {
  std::string out;
  bool dash = false;
  for (unsigned char c : text) {
    if (std::isalnum(c) && c < 0x80) {
      if (dash && !out.empty()) out += '-';
      out += static_cast<char>(std::tolower(c));
      dash = false;
    } else {
      dash = true;
    }
  }
  return out.empty() ? "x" : out;
}

/// Hands out collision-free file stems: the second request for a stem gets
/// `-2`, the third `-3`, and so on.
class FileNamer {
 public:
  std::string claim(const std::string& stem) {
    std::string candidate = stem;
    for (int n = 2; used_.contains(candidate); ++n) candidate = stem + "-" + std::to_string(n);
    used_.insert(candidate);
    return candidate;
  }

 private:
  std::set<std::string> used_;
};

inline std::string score_text(double score) { return format_shortest(score); }

inline nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json j;
  json schema = json::array();
  for (const auto& c : r.input_schema) {
    schema.push_back({{"name", c.name},
                      {"kind", to_string(c.kind)},
                      {"null_count", c.null_count},
                      {"distinct_count", c.distinct_count}});
  }
  j["input"] = {{"path", r.input}, {"rows_loaded", r.rows_loaded}, {"rows_used", r.rows_used}, {"columns", schema}};

  json clean_cols = json::array();
  for (const auto& c : r.clean.columns) {
    clean_cols.push_back({{"name", c.name},
                          {"kind", to_string(c.kind)},
                          {"null_count", c.null_count},
                          {"inconsistent_count", c.inconsistent_count}});
  }
  j["clean_report"] = {{"total_rows", r.clean.total_rows}, {"columns", clean_cols}};

  json log = json::array();
  for (const auto& e : r.impute_log.entries) {
    log.push_back({{"column", e.column},
                   {"row", e.row},
                   {"action", e.action == ImputeEntry::Action::fill ? "fill" : "drop"},
                   {"value", e.value},
                   {"reason", e.reason}});
  }
  j["imputation"] = {{"policy",
                      {{"continuous", to_string(r.policy.continuous)},
                       {"categorical", to_string(r.policy.categorical)},
                       {"timestamp", to_string(r.policy.timestamp)}}},
                     {"dropped_rows", r.impute_log.dropped_rows},
                     {"filled_cells", r.impute_log.fills()},
                     {"log", log}};

  json units = json::array();
  for (const auto& u : r.unit_ranking) {
    units.push_back({{"unit", to_string(u.unit)},
                     {"column", u.column},
                     {"score", score_text(u.score)},
                     {"distinct_values", u.distinct_values}});
  }
  j["unit"] = {{"mode", r.unit_auto ? "auto" : "fixed"},
               {"chosen", to_string(r.chosen_unit)},
               {"column", r.unit_column},
               {"score_note", "proxy: between/within variance ratio of target means"},
               {"ranking", units}};

  json ranked = json::array();
  for (const auto& s : r.hue_ranking.ranked) {
    ranked.push_back({{"hue", s.hue_name}, {"score", score_text(s.score)}, {"series_count", s.series_count}});
  }
  json excluded = json::array();
  for (const auto& e : r.hue_ranking.excluded) excluded.push_back({{"column", e.column}, {"reason", e.reason}});
  j["hue_ranking"] = {{"x", r.hue_x}, {"ranked", ranked}, {"excluded", excluded}};

  j["combination"] = {{"columns", r.combination}, {"column", r.combination_column}};
  j["pivot"] = {{"combo_columns", r.pivot_columns}};

  json manifest = json::array();
  for (const auto& a : r.artifacts) {
    manifest.push_back({{"file", a.file},
                        {"kind", a.kind},
                        {"chart", a.chart},
                        {"step", a.step},
                        {"x", a.x},
                        {"hue", a.hue},
                        {"title", a.title}});
  }
  j["manifest"] = manifest;
  j["decisions"] = r.decisions;
  return j;
}

inline std::string report_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

/// Writes via a sibling temp file and rename so readers never see a
/// partial file.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::io_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace detail

/// Writes every artifact plus `report.json` under `out_dir` and returns the
/// relative paths written. Stale `.svg` files in `plots/` and `.csv` files
/// in `tables/` that are not part of this report are removed so the
/// directory mirrors the manifest.
inline std::vector<std::string> emit_report(const Report& report, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& sub : {out_dir, out_dir / "plots", out_dir / "tables"}) {
    fs::create_directories(sub, ec);
    if (ec || !fs::is_directory(sub)) {
      throw Error(ErrorCode::io_error, "cannot create directory " + sub.string() + (ec ? ": " + ec.message() : ""));
    }
  }
  std::set<std::string> keep;
  for (const auto& a : report.artifacts) keep.insert(a.file);
  for (const auto& [sub, ext] : {std::pair{"plots", ".svg"}, std::pair{"tables", ".csv"}}) {
    for (const auto& entry : fs::directory_iterator(out_dir / sub, ec)) {
      const auto rel = (fs::path(sub) / entry.path().filename()).generic_string();
      if (entry.is_regular_file() && entry.path().extension() == ext && !keep.contains(rel)) {
        fs::remove(entry.path(), ec);
      }
    }
  }

  std::vector<std::string> written;
  for (const auto& a : report.artifacts) {
    detail::write_atomic(out_dir / a.file, a.content);
    written.push_back(a.file);
  }
  detail::write_atomic(out_dir / "report.json", report_json(report));
  written.push_back("report.json");
  return written;
}

}  // namespace tsviz
