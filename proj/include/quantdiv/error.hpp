#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quantdiv {

enum class ErrorCode {
  NegativeProbability,
  NotNormalized,
  TooFewClasses,
  AllZeroVotes,
  IndexOutOfRange,
  LengthMismatch,
  OutOfRange,
  TooShort,
  TooFewSystems,
  TooFewMeasures,
  TooFewTrials,
  EmptySubset,
  MisalignedRun,
  DatasetTooSmall,
  ParseError,
  DuplicateCaseId,
  InconsistentClassCount,
  MissingCase,
  UnknownCase,
  UnknownMeasure,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type. When the
// failure can be traced to an input record, the case id and/or the 1-based
// line number are attached and also folded into what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::string>& case_id() const noexcept { return case_id_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }

  // Returns a copy carrying location context.
  Error with_case(std::string case_id) const;
  Error with_line(std::size_t line) const;
  /// Names the file the record came from.
  Error with_source(std::string source) const;

 private:
  Error(ErrorCode code, std::string bare, std::optional<std::string> case_id,
        std::optional<std::size_t> line, std::optional<std::string> source);

  ErrorCode code_;
  std::string bare_;
  std::optional<std::string> case_id_;
  std::optional<std::size_t> line_;
  std::optional<std::string> source_;
};

}  // namespace quantdiv
