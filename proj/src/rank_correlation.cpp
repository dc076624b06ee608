#include "quantdiv/rank_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "quantdiv/error.hpp"

namespace quantdiv {

namespace {

int compare(double a, double b, double tie_eps) {
  if (std::abs(a - b) <= tie_eps) return 0;
  return a < b ? -1 : 1;
}

void check_lists(std::span<const double> xs, std::span<const double> ys, std::size_t min_len) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + " items");
  }
  if (xs.size() < min_len) {
    throw Error(ErrorCode::TooShort, "need at least " + std::to_string(min_len) + " items, got " +
                                         std::to_string(xs.size()));
  }
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

// Long & Cliff style consistent variance of tau_a. With d_ij the product of
// pair signs, d_i. the row mean over j != i:
//   var = (4 (n-2) s2_row + 2 s2_pair) / (n (n-1))
// where s2_row is the unbiased variance of the d_i. around tau and s2_pair
// that of the d_ij. Floored at (1 - tau^2) / (n (n-1)).
double long_cliff_variance(std::span<const double> xs, std::span<const double> ys, double tau) {
  const std::size_t n = xs.size();
  const double nn = static_cast<double>(n);
  double row_ss = 0.0;
  double pair_ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = compare(xs[i], xs[j], 0.0) * compare(ys[i], ys[j], 0.0);
      row += d;
      pair_ss += (d - tau) * (d - tau);
    }
    row /= nn - 1.0;
    row_ss += (row - tau) * (row - tau);
  }
  const double s2_row = row_ss / (nn - 1.0);
  const double s2_pair = pair_ss / (nn * (nn - 1.0) - 1.0);
  const double var = (4.0 * (nn - 2.0) * s2_row + 2.0 * s2_pair) / (nn * (nn - 1.0));
  return std::max(var, (1.0 - tau * tau) / (nn * (nn - 1.0)));
}

}  // namespace

PairCounts pair_counts(std::span<const double> xs, std::span<const double> ys, double tie_eps) {
  check_lists(xs, ys, 2);
  if (!(tie_eps >= 0.0)) throw Error(ErrorCode::OutOfRange, "tie_eps must be >= 0");
  PairCounts pc;
  pc.n = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const int cx = compare(xs[i], xs[j], tie_eps);
      const int cy = compare(ys[i], ys[j], tie_eps);
      if (cx == 0) ++pc.tied_x;
      if (cy == 0) ++pc.tied_y;
      if (cx == 0 || cy == 0) continue;
      if (cx == cy) {
        ++pc.conc;
      } else {
        ++pc.disc;
      }
    }
  }
  return pc;
}

double tau_b(const PairCounts& counts) noexcept {
  const double num = static_cast<double>(counts.conc) - static_cast<double>(counts.disc);
  const double nx = static_cast<double>(std::max<std::uint64_t>(1, counts.not_tied_x()));
  const double ny = static_cast<double>(std::max<std::uint64_t>(1, counts.not_tied_y()));
  return num / std::sqrt(nx * ny);
}

double tau_b(std::span<const double> xs, std::span<const double> ys, double tie_eps) {
  return tau_b(pair_counts(xs, ys, tie_eps));
}

double tau_a(std::span<const double> xs, std::span<const double> ys, double tie_eps) {
  const PairCounts pc = pair_counts(xs, ys, tie_eps);
  return (static_cast<double>(pc.conc) - static_cast<double>(pc.disc)) /
         static_cast<double>(pc.total_pairs());
}

TauResult tau_with_ci(std::span<const double> xs, std::span<const double> ys, double confidence,
                      CiMethod method) {
  check_lists(xs, ys, 3);
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "confidence must lie in (0, 1)");
  }
  TauResult r;
  r.n = xs.size();
  r.tau = tau_b(xs, ys, 0.0);
  const double z = normal_quantile(0.5 + confidence / 2.0);
  const double nn = static_cast<double>(r.n);

  if (method == CiMethod::FisherZ) {
    if (r.n <= 4) {
      r.ci_low = -1.0;
      r.ci_high = 1.0;
    } else if (r.tau >= 1.0 || r.tau <= -1.0) {
      r.ci_low = r.ci_high = r.tau;
    } else {
      const double centre = std::atanh(r.tau);
      const double half = z * std::sqrt(0.437 / (nn - 4.0));
      r.ci_low = std::tanh(centre - half);
      r.ci_high = std::tanh(centre + half);
    }
  } else {
    const double half = z * std::sqrt(long_cliff_variance(xs, ys, r.tau));
    r.ci_low = r.tau - half;
    r.ci_high = r.tau + half;
  }
  r.ci_low = std::clamp(std::min(r.ci_low, r.tau), -1.0, 1.0);
  r.ci_high = std::clamp(std::max(r.ci_high, r.tau), -1.0, 1.0);
  return r;
}

}  // namespace quantdiv
