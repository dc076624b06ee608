#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quantdiv/dataset.hpp"
#include "quantdiv/measures.hpp"
#include "quantdiv/rank_correlation.hpp"

namespace quantdiv {

/// Per-case scores of every system under one measure, row-major
/// (systems x cases).
struct ScoreMatrix {
  std::string measure;
  std::vector<std::string> system_ids;
  std::vector<std::string> case_ids;
  std::vector<double> values;

  std::size_t systems() const noexcept { return system_ids.size(); }
  std::size_t cases() const noexcept { return case_ids.size(); }
  double at(std::size_t s, std::size_t c) const { return values[s * cases() + c]; }
  std::span<const double> row(std::size_t s) const {
    return std::span<const double>(values).subspan(s * cases(), cases());
  }

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;
};

/// Throws MisalignedRun if a run's case ids differ from the dataset's.
ScoreMatrix score_matrix(const Dataset& gold, std::span<const SystemRun> runs, Measure id);

/// Per-system mean over the given case positions. Throws EmptySubset or
/// IndexOutOfRange.
std::vector<double> mean_scores(const ScoreMatrix& m, std::span<const std::size_t> case_subset);
std::vector<double> mean_scores(const ScoreMatrix& m);

/// How two system-score lists are correlated inside the experiments.
enum class TauKind {
  B,      ///< tau-b, exact ties only
  Plain,  ///< (conc - disc) / (n(n-1)/2)
};

double ranking_tau(std::span<const double> xs, std::span<const double> ys, TauKind kind);

struct AgreementCell {
  std::size_t row;
  std::size_t col;
  TauResult result;

  friend bool operator==(const AgreementCell&, const AgreementCell&) = default;
};

struct AgreementReport {
  std::vector<std::string> measures;
  /// Upper triangle, row-major: (0,1), (0,2), ..., (m-2, m-1).
  std::vector<AgreementCell> cells;
  /// Mean tau over every pair involving the measure.
  std::vector<double> avg_similarity;
  double confidence = 0.95;
  std::size_t systems = 0;

  const TauResult& at(std::size_t i, std::size_t j) const;

  friend bool operator==(const AgreementReport&, const AgreementReport&) = default;
};

struct AgreementOptions {
  double confidence = 0.95;
  CiMethod ci = CiMethod::FisherZ;
};

/// Ranking agreement between every pair of measures, from per-system mean
/// scores. Throws TooFewSystems (< 3) or TooFewMeasures (< 2).
AgreementReport agreement(std::span<const ScoreMatrix> matrices, const AgreementOptions& opts = {});
AgreementReport agreement(const Dataset& gold, std::span<const SystemRun> runs,
                          std::span<const Measure> measures, const AgreementOptions& opts = {});

struct SubsetMode {
  enum class Kind { FullSplit, FixedSize };
  Kind kind = Kind::FullSplit;
  std::size_t k = 0;

  static SubsetMode full_split() { return {}; }
  static SubsetMode fixed_size(std::size_t k) { return {Kind::FixedSize, k}; }

  /// "half" or "k=<n>".
  std::string to_string() const;
  /// Throws ParseError.
  static SubsetMode parse(const std::string& text);

  friend bool operator==(const SubsetMode&, const SubsetMode&) = default;
};

struct Split {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

/// Case subsets for one trial, a pure function of (n_cases, mode, seed, trial).
/// FullSplit puts the odd case in the first half. Throws DatasetTooSmall.
Split draw_split(std::size_t n_cases, const SubsetMode& mode, std::uint64_t seed,
                 std::size_t trial);

/// An ordered pair: `better` has the significantly higher mean.
struct SignificantPair {
  std::size_t better;
  std::size_t worse;

  friend auto operator<=>(const SignificantPair&, const SignificantPair&) = default;
};

struct HsdResult {
  std::vector<double> means;
  /// (1 - alpha) quantile of the permutation max-difference statistic.
  double critical_value = 0.0;
  /// Row-major m x m, fraction of permutations whose max difference reached
  /// the observed difference.
  std::vector<double> p_values;
  std::vector<SignificantPair> significant;
};

/// Randomised Tukey HSD over a (groups x trials) grid. Each permutation round
/// shuffles group labels independently within every trial column.
/// Throws TooFewMeasures, TooFewTrials or OutOfRange.
HsdResult randomized_tukey_hsd(const std::vector<std::vector<double>>& per_trial, double alpha,
                               std::size_t permutations, std::uint64_t seed,
                               unsigned threads = 1);

struct ConsistencyOptions {
  SubsetMode mode;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  double alpha = 0.05;
  std::size_t permutations = 5000;
  unsigned threads = 1;
  TauKind tau = TauKind::B;
};

struct ConsistencyReport {
  std::vector<std::string> measures;
  std::vector<double> mean_tau;
  /// measures x trials
  std::vector<std::vector<double>> per_trial_tau;
  std::vector<SignificantPair> significant_pairs;
  double critical_value = 0.0;
  SubsetMode mode;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double alpha = 0.05;
  std::size_t permutations = 0;
  TauKind tau = TauKind::B;

  friend bool operator==(const ConsistencyReport&, const ConsistencyReport&) = default;
};

/// Split-half (or fixed-size) system ranking consistency for each matrix,
/// followed by a randomised Tukey HSD across measures. All matrices must
/// share systems and cases. Output is independent of opts.threads.
ConsistencyReport split_half_consistency(std::span<const ScoreMatrix> matrices,
                                         const ConsistencyOptions& opts);
ConsistencyReport split_half_consistency(const Dataset& gold, std::span<const SystemRun> runs,
                                         std::span<const Measure> measures,
                                         const ConsistencyOptions& opts);

}  // namespace quantdiv
