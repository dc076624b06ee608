#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace quantdiv {

/// Absolute tolerance on the sum of a probability vector.
inline constexpr double kNormalizationTolerance = 1e-9;

/// A probability mass function over ordinal classes.
///
/// Classes are identified by position (0-based here); their order is the
/// ordinal order. Instances are immutable and always satisfy: at least two
/// classes, every entry non-negative, entries summing to one. Inputs that sum
/// to one within kNormalizationTolerance are rescaled by their actual sum so
/// that downstream code sees an exact simplex point.
class Distribution {
 public:
  /// Validates raw probabilities. Throws Error with NegativeProbability,
  /// NotNormalized or TooFewClasses.
  static Distribution validate(std::span<const double> raw);

  /// Normalizes non-negative vote counts. Throws AllZeroVotes or TooFewClasses.
  static Distribution from_votes(std::span<const std::uint64_t> counts);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Prefix sums; the last entry is 1 up to rounding.
  std::vector<double> cumulative() const;

  /// Positions with strictly positive probability, ascending.
  std::vector<std::size_t> support() const;

  bool is_uniform() const noexcept;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

inline std::vector<double> cumulative(const Distribution& d) { return d.cumulative(); }

/// The set of classes with non-zero gold probability.
inline std::vector<std::size_t> gold_support(const Distribution& gold) { return gold.support(); }

}  // namespace quantdiv
