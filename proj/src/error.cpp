#include "quantdiv/error.hpp"

namespace quantdiv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::TooFewClasses: return "TooFewClasses";
    case ErrorCode::AllZeroVotes: return "AllZeroVotes";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::TooFewSystems: return "TooFewSystems";
    case ErrorCode::TooFewMeasures: return "TooFewMeasures";
    case ErrorCode::TooFewTrials: return "TooFewTrials";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::MisalignedRun: return "MisalignedRun";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateCaseId: return "DuplicateCaseId";
    case ErrorCode::InconsistentClassCount: return "InconsistentClassCount";
    case ErrorCode::MissingCase: return "MissingCase";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::UnknownMeasure: return "UnknownMeasure";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& bare,
                    const std::optional<std::string>& case_id,
                    const std::optional<std::size_t>& line,
                    const std::optional<std::string>& source) {
  std::string out = source ? *source + ": " : std::string();
  out += to_string(code);
  if (line) out += " at line " + std::to_string(*line);
  if (case_id) out += " (case " + *case_id + ")";
  if (!bare.empty()) out += ": " + bare;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : Error(code, message, std::nullopt, std::nullopt, std::nullopt) {}

Error::Error(ErrorCode code, std::string bare, std::optional<std::string> case_id,
             std::optional<std::size_t> line, std::optional<std::string> source)
    : std::runtime_error(compose(code, bare, case_id, line, source)),
      code_(code),
      bare_(std::move(bare)),
      case_id_(std::move(case_id)),
      line_(line),
      source_(std::move(source)) {}

Error Error::with_case(std::string case_id) const {
  return Error(code_, bare_, std::move(case_id), line_, source_);
}

Error Error::with_line(std::size_t line) const {
  return Error(code_, bare_, case_id_, line, source_);
}

Error Error::with_source(std::string source) const {
  return Error(code_, bare_, case_id_, line_, std::move(source));
}

}  // namespace quantdiv
