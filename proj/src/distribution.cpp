#include "quantdiv/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "quantdiv/error.hpp"

namespace quantdiv {

Distribution Distribution::validate(std::span<const double> raw) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::TooFewClasses,
                "need at least 2 classes, got " + std::to_string(raw.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= 0.0) || !std::isfinite(raw[i])) {
      throw Error(ErrorCode::NegativeProbability,
                  "entry " + std::to_string(i + 1) + " is " + std::to_string(raw[i]));
    }
    sum += raw[i];
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(sum));
  }
  std::vector<double> probs(raw.begin(), raw.end());
  // Sums within accumulated rounding stay untouched so reloading is idempotent.
  if (std::abs(sum - 1.0) > static_cast<double>(raw.size()) * std::numeric_limits<double>::epsilon()) {
    for (double& p : probs) p /= sum;
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::from_votes(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) {
    throw Error(ErrorCode::TooFewClasses,
                "need at least 2 classes, got " + std::to_string(counts.size()));
  }
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw Error(ErrorCode::AllZeroVotes, "no votes cast");
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return Distribution(std::move(probs));
}

std::vector<double> Distribution::cumulative() const {
  std::vector<double> cp(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cp.begin());
  return cp;
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > 0.0) out.push_back(i);
  }
  return out;
}

bool Distribution::is_uniform() const noexcept {
  for (double p : probs_) {
    if (p != probs_.front()) return false;
  }
  return true;
}

}  // namespace quantdiv
