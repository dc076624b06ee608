#pragma once

#include <cstdint>
#include <span>

namespace quantdiv {

/// Pairwise comparison tallies between two equally long lists.
/// Pairs tied in either list are excluded from both conc and disc.
struct PairCounts {
  std::uint64_t conc = 0;
  std::uint64_t disc = 0;
  std::uint64_t tied_x = 0;
  std::uint64_t tied_y = 0;
  std::uint64_t n = 0;

  std::uint64_t total_pairs() const noexcept { return n * (n - 1) / 2; }
  std::uint64_t not_tied_x() const noexcept { return total_pairs() - tied_x; }
  std::uint64_t not_tied_y() const noexcept { return total_pairs() - tied_y; }

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Tie tolerance used when correlating the bins of two distributions.
inline constexpr double kBinTieEps = 1e-9;

/// Two values of a list are tied iff |a - b| <= tie_eps.
/// Throws LengthMismatch, or TooShort when fewer than two items.
PairCounts pair_counts(std::span<const double> xs, std::span<const double> ys, double tie_eps);

/// Kendall's tau-b with max(1, .) guards on the not-tied pair counts, so a
/// fully tied list yields 0 instead of a division by zero.
double tau_b(std::span<const double> xs, std::span<const double> ys, double tie_eps);
double tau_b(const PairCounts& counts) noexcept;

/// Plain Kendall tau: (conc - disc) / (n(n-1)/2).
double tau_a(std::span<const double> xs, std::span<const double> ys, double tie_eps);

enum class CiMethod {
  /// Fisher z-transform with var(z) = 0.437 / (n - 4).
  FisherZ,
  /// Consistent variance estimate from per-item concordance dispersion.
  LongCliff,
};

struct TauResult {
  double tau = 0.0;
  double ci_low = -1.0;
  double ci_high = 1.0;
  std::size_t n = 0;

  friend bool operator==(const TauResult&, const TauResult&) = default;
};

/// tau_b (exact ties only) with a two-sided confidence interval clamped to
/// [-1, 1] and widened if needed so it always contains tau.
/// Throws TooShort when fewer than three items, OutOfRange for a bad level.
TauResult tau_with_ci(std::span<const double> xs, std::span<const double> ys,
                      double confidence = 0.95, CiMethod method = CiMethod::FisherZ);

}  // namespace quantdiv
