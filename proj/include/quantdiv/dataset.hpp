#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quantdiv/distribution.hpp"

namespace quantdiv {

/// Gold distributions for an ordered set of test cases.
struct Dataset {
  std::vector<std::string> case_ids;
  /// Ordinal order; opaque otherwise.
  std::vector<std::string> class_labels;
  std::vector<Distribution> gold;
  /// Raw assessor votes, present for cases loaded from counts.
  std::vector<std::optional<std::vector<std::uint64_t>>> votes;

  std::size_t size() const noexcept { return case_ids.size(); }
  std::size_t num_classes() const noexcept { return class_labels.size(); }

  /// Throws DuplicateCaseId / InconsistentClassCount / LengthMismatch.
  void check() const;

  /// Case id -> position.
  std::unordered_map<std::string, std::size_t> index() const;
};

/// One system's estimates, stored in the order of the dataset it was aligned to.
struct SystemRun {
  std::string system_id;
  std::vector<std::string> case_ids;
  std::vector<Distribution> est;
};

}  // namespace quantdiv
