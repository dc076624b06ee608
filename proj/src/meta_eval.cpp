#include "quantdiv/meta_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/random.hpp"

namespace quantdiv {

ScoreMatrix score_matrix(const Dataset& gold, std::span<const SystemRun> runs, Measure id) {
  ScoreMatrix m;
  m.measure = std::string(to_string(id));
  m.case_ids = gold.case_ids;
  m.values.reserve(runs.size() * gold.size());
  for (const SystemRun& run : runs) {
    if (run.case_ids != gold.case_ids || run.est.size() != gold.size()) {
      throw Error(ErrorCode::MisalignedRun,
                  "run " + run.system_id + " does not cover the dataset's cases in order");
    }
    m.system_ids.push_back(run.system_id);
    for (std::size_t c = 0; c < gold.size(); ++c) {
      try {
        m.values.push_back(score(id, run.est[c], gold.gold[c]));
      } catch (const Error& e) {
        throw e.with_case(gold.case_ids[c]);
      }
    }
  }
  return m;
}

std::vector<double> mean_scores(const ScoreMatrix& m, std::span<const std::size_t> case_subset) {
  if (case_subset.empty()) throw Error(ErrorCode::EmptySubset, "no cases selected");
  for (std::size_t c : case_subset) {
    if (c >= m.cases()) {
      throw Error(ErrorCode::IndexOutOfRange, "case position " + std::to_string(c));
    }
  }
  std::vector<double> means(m.systems());
  for (std::size_t s = 0; s < m.systems(); ++s) {
    const auto row = m.row(s);
    double sum = 0.0;
    for (std::size_t c : case_subset) sum += row[c];
    means[s] = sum / static_cast<double>(case_subset.size());
  }
  return means;
}

std::vector<double> mean_scores(const ScoreMatrix& m) {
  std::vector<std::size_t> all(m.cases());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return mean_scores(m, all);
}

double ranking_tau(std::span<const double> xs, std::span<const double> ys, TauKind kind) {
  return kind == TauKind::B ? tau_b(xs, ys, 0.0) : tau_a(xs, ys, 0.0);
}

// -- agreement ---------------------------------------------------------------

const TauResult& AgreementReport::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& cell : cells) {
    if (cell.row == i && cell.col == j) return cell.result;
  }
  throw Error(ErrorCode::IndexOutOfRange,
              "no agreement cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

AgreementReport agreement(std::span<const ScoreMatrix> matrices, const AgreementOptions& opts) {
  if (matrices.size() < 2) {
    throw Error(ErrorCode::TooFewMeasures, "need at least 2 measures");
  }
  const std::size_t systems = matrices.front().systems();
  if (systems < 3) {
    throw Error(ErrorCode::TooFewSystems,
                "need at least 3 systems, got " + std::to_string(systems));
  }
  AgreementReport report;
  report.confidence = opts.confidence;
  report.systems = systems;
  std::vector<std::vector<double>> means;
  for (const auto& m : matrices) {
    if (m.system_ids != matrices.front().system_ids) {
      throw Error(ErrorCode::MisalignedRun, "score matrices cover different systems");
    }
    report.measures.push_back(m.measure);
    means.push_back(mean_scores(m));
  }
  const std::size_t k = matrices.size();
  std::vector<double> sums(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const TauResult r = tau_with_ci(means[i], means[j], opts.confidence, opts.ci);
      report.cells.push_back({i, j, r});
      sums[i] += r.tau;
      sums[j] += r.tau;
    }
  }
  for (double s : sums) report.avg_similarity.push_back(s / static_cast<double>(k - 1));
  return report;
}

AgreementReport agreement(const Dataset& gold, std::span<const SystemRun> runs,
                          std::span<const Measure> measures, const AgreementOptions& opts) {
  if (runs.size() < 3) {
    throw Error(ErrorCode::TooFewSystems,
                "need at least 3 systems, got " + std::to_string(runs.size()));
  }
  if (measures.size() < 2) throw Error(ErrorCode::TooFewMeasures, "need at least 2 measures");
  std::vector<ScoreMatrix> matrices;
  for (Measure id : measures) matrices.push_back(score_matrix(gold, runs, id));
  return agreement(matrices, opts);
}

// -- consistency -------------------------------------------------------------

std::string SubsetMode::to_string() const {
  return kind == Kind::FullSplit ? "half" : "k=" + std::to_string(k);
}

SubsetMode SubsetMode::parse(const std::string& text) {
  if (text == "half") return full_split();
  if (text.rfind("k=", 0) == 0) {
    std::size_t k = 0;
    const char* first = text.data() + 2;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && k > 0) return fixed_size(k);
  }
  throw Error(ErrorCode::ParseError, "subset mode must be 'half' or 'k=<positive int>', got '" +
                                         text + "'");
}

Split draw_split(std::size_t n_cases, const SubsetMode& mode, std::uint64_t seed,
                 std::size_t trial) {
  if (mode.kind == SubsetMode::Kind::FullSplit) {
    if (n_cases < 4) {
      throw Error(ErrorCode::DatasetTooSmall,
                  "full split needs at least 4 cases, got " + std::to_string(n_cases));
    }
  } else if (mode.k == 0 || n_cases < 2 * mode.k) {
    throw Error(ErrorCode::DatasetTooSmall, "two disjoint subsets of size " +
                                                std::to_string(mode.k) + " need at least " +
                                                std::to_string(2 * mode.k) + " cases, got " +
                                                std::to_string(n_cases));
  }
  std::vector<std::size_t> order(n_cases);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, kSplitStream, trial));
  shuffle(std::span<std::size_t>(order), rng);

  const std::size_t first_size =
      mode.kind == SubsetMode::Kind::FullSplit ? (n_cases + 1) / 2 : mode.k;
  const std::size_t second_size =
      mode.kind == SubsetMode::Kind::FullSplit ? n_cases - first_size : mode.k;
  Split split;
  split.first.assign(order.begin(), order.begin() + first_size);
  split.second.assign(order.begin() + first_size, order.begin() + first_size + second_size);
  return split;
}

HsdResult randomized_tukey_hsd(const std::vector<std::vector<double>>& per_trial, double alpha,
                               std::size_t permutations, std::uint64_t seed, unsigned threads) {
  const std::size_t groups = per_trial.size();
  if (groups < 2) throw Error(ErrorCode::TooFewMeasures, "need at least 2 groups");
  const std::size_t trials = per_trial.front().size();
  for (const auto& row : per_trial) {
    if (row.size() != trials) throw Error(ErrorCode::LengthMismatch, "ragged trial grid");
  }
  if (trials < 2) throw Error(ErrorCode::TooFewTrials, "need at least 2 trials");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::OutOfRange, "alpha must lie in (0, 1)");
  if (permutations == 0) throw Error(ErrorCode::OutOfRange, "need at least 1 permutation");

  HsdResult result;
  const double b = static_cast<double>(trials);
  for (const auto& row : per_trial) {
    result.means.push_back(std::accumulate(row.begin(), row.end(), 0.0) / b);
  }

  std::vector<double> null_max(permutations);
  detail::parallel_for(permutations, threads, [&](std::size_t r) {
    Rng rng(derive_seed(seed, kPermutationStream, r));
    std::vector<double> sums(groups, 0.0);
    std::vector<double> column(groups);
    for (std::size_t t = 0; t < trials; ++t) {
      for (std::size_t g = 0; g < groups; ++g) column[g] = per_trial[g][t];
      shuffle(std::span<double>(column), rng);
      for (std::size_t g = 0; g < groups; ++g) sums[g] += column[g];
    }
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    null_max[r] = (*hi - *lo) / b;
  });

  std::vector<double> sorted = null_max;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(permutations)));
  result.critical_value = sorted[std::clamp<std::size_t>(rank, 1, permutations) - 1];

  result.p_values.assign(groups * groups, 1.0);
  for (std::size_t i = 0; i < groups; ++i) {
    for (std::size_t j = 0; j < groups; ++j) {
      if (i == j) continue;
      const double observed = std::abs(result.means[i] - result.means[j]);
      const auto reached = static_cast<std::size_t>(
          sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), observed));
      result.p_values[i * groups + j] =
          static_cast<double>(reached) / static_cast<double>(permutations);
      if (result.means[i] > result.means[j] && observed > result.critical_value) {
        result.significant.push_back({i, j});
      }
    }
  }
  return result;
}

ConsistencyReport split_half_consistency(std::span<const ScoreMatrix> matrices,
                                         const ConsistencyOptions& opts) {
  if (matrices.empty()) throw Error(ErrorCode::TooFewMeasures, "no measures given");
  if (opts.trials == 0) throw Error(ErrorCode::TooFewTrials, "need at least 1 trial");
  const ScoreMatrix& head = matrices.front();
  for (const auto& m : matrices) {
    if (m.system_ids != head.system_ids || m.case_ids != head.case_ids) {
      throw Error(ErrorCode::MisalignedRun, "score matrices differ in systems or cases");
    }
  }
  if (head.systems() < 2) {
    throw Error(ErrorCode::TooFewSystems, "need at least 2 systems to rank");
  }
  // Surface size errors before starting worker threads.
  draw_split(head.cases(), opts.mode, opts.seed, 0);

  ConsistencyReport report;
  report.mode = opts.mode;
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.alpha = opts.alpha;
  report.permutations = opts.permutations;
  report.tau = opts.tau;
  for (const auto& m : matrices) report.measures.push_back(m.measure);
  report.per_trial_tau.assign(matrices.size(), std::vector<double>(opts.trials, 0.0));

  detail::parallel_for(opts.trials, opts.threads, [&](std::size_t trial) {
    const Split split = draw_split(head.cases(), opts.mode, opts.seed, trial);
    for (std::size_t k = 0; k < matrices.size(); ++k) {
      const auto a = mean_scores(matrices[k], split.first);
      const auto b = mean_scores(matrices[k], split.second);
      report.per_trial_tau[k][trial] = ranking_tau(a, b, opts.tau);
    }
  });

  for (const auto& row : report.per_trial_tau) {
    report.mean_tau.push_back(std::accumulate(row.begin(), row.end(), 0.0) /
                              static_cast<double>(opts.trials));
  }
  if (matrices.size() >= 2 && opts.trials >= 2) {
    const HsdResult hsd = randomized_tukey_hsd(report.per_trial_tau, opts.alpha,
                                               opts.permutations, opts.seed, opts.threads);
    report.significant_pairs = hsd.significant;
    report.critical_value = hsd.critical_value;
  }
  return report;
}

ConsistencyReport split_half_consistency(const Dataset& gold, std::span<const SystemRun> runs,
                                         std::span<const Measure> measures,
                                         const ConsistencyOptions& opts) {
  std::vector<ScoreMatrix> matrices;
  for (Measure id : measures) matrices.push_back(score_matrix(gold, runs, id));
  return split_half_consistency(matrices, opts);
}

}  // namespace quantdiv
