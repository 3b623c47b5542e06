#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace tsviz {

enum class ErrorCode {
  file_not_found,
  malformed_csv,
  empty_input,
  imputation_impossible,
  policy_fail,
  parse_error,
  invalid_date,
  unknown_column,
  wrong_kind,
  duplicate_column,
  non_positive,
  out_of_range,
  invalid_argument,
  same_column,
  too_few_series,
  empty_candidates,
  empty_table,
  too_many_bars,
  invalid_spec,
  no_usable_unit,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::file_not_found: return "FileNotFound";
    case ErrorCode::malformed_csv: return "MalformedCsv";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::imputation_impossible: return "ImputationImpossible";
    case ErrorCode::policy_fail: return "PolicyFail";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_date: return "InvalidDate";
    case ErrorCode::unknown_column: return "UnknownColumn";
    case ErrorCode::wrong_kind: return "WrongKind";
    case ErrorCode::duplicate_column: return "DuplicateColumn";
    case ErrorCode::non_positive: return "NonPositive";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::same_column: return "SameColumn";
    case ErrorCode::too_few_series: return "TooFewSeries";
    case ErrorCode::empty_candidates: return "EmptyCandidates";
    case ErrorCode::empty_table: return "EmptyTable";
    case ErrorCode::too_many_bars: return "TooManyBars";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::no_usable_unit: return "NoUsableUnit";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code,
/// a human-readable detail, and (once it crosses the pipeline) the stage
/// it was raised in.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::string stage = {})
      : std::runtime_error(compose(code, detail, stage)),
        code_(code),
        detail_(std::move(detail)),
        stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& stage() const noexcept { return stage_; }

  Error with_stage(std::string stage) const { return Error(code_, detail_, std::move(stage)); }

 private:
  static std::string compose(ErrorCode code, const std::string& detail, const std::string& stage) {
    std::string out;
    if (!stage.empty()) out += "[" + stage + "] ";
    out += to_string(code);
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  std::string stage_;
};

/// Row-level CSV failure; `row` is the 1-based data row (header excluded).
class MalformedCsvError : public Error {
 public:
  MalformedCsvError(std::size_t row, const std::string& reason)
      : Error(ErrorCode::malformed_csv, "row " + std::to_string(row) + ": " + reason), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Timestamp parse failure; `position` is the byte offset into the text.
class ParseError : public Error {
 public:
  ParseError(std::string text, std::size_t position)
      : Error(ErrorCode::parse_error,
              "'" + text + "' at position " + std::to_string(position)),
        text_(std::move(text)),
        position_(position) {}
  const std::string& text() const noexcept { return text_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string text_;
  std::size_t position_;
};

}  // namespace tsviz
