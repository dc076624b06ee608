#include "quantdiv/dataset.hpp"

#include <string>

#include "quantdiv/error.hpp"

namespace quantdiv {

void Dataset::check() const {
  if (gold.size() != case_ids.size() || (!votes.empty() && votes.size() != case_ids.size())) {
    throw Error(ErrorCode::LengthMismatch, "dataset columns have different lengths");
  }
  if (class_labels.size() < 2) {
    throw Error(ErrorCode::TooFewClasses, "need at least 2 class labels");
  }
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t c = 0; c < case_ids.size(); ++c) {
    if (!seen.emplace(case_ids[c], c).second) {
      throw Error(ErrorCode::DuplicateCaseId, "").with_case(case_ids[c]);
    }
    if (gold[c].size() != class_labels.size()) {
      throw Error(ErrorCode::InconsistentClassCount,
                  std::to_string(gold[c].size()) + " classes, expected " +
                      std::to_string(class_labels.size()))
          .with_case(case_ids[c]);
    }
  }
}

std::unordered_map<std::string, std::size_t> Dataset::index() const {
  std::unordered_map<std::string, std::size_t> out;
  for (std::size_t c = 0; c < case_ids.size(); ++c) out.emplace(case_ids[c], c);
  return out;
}

}  // namespace quantdiv
