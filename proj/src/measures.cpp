#include "quantdiv/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "quantdiv/error.hpp"
#include "quantdiv/rank_correlation.hpp"

namespace quantdiv {

namespace {

void check_aligned(const Distribution& est, const Distribution& gold) {
  if (est.size() != gold.size()) {
    throw Error(ErrorCode::LengthMismatch, "estimate has " + std::to_string(est.size()) +
                                               " classes, gold has " + std::to_string(gold.size()));
  }
}

double root_normalise(double divergence, std::size_t classes) {
  return std::sqrt(divergence / static_cast<double>(classes - 1));
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::NMD: return "NMD";
    case Measure::RNOD: return "RNOD";
    case Measure::RNOD2: return "RNOD2";
    case Measure::RNADW: return "RNADW";
    case Measure::RNADW2: return "RNADW2";
    case Measure::RSNOD: return "RSNOD";
    case Measure::NVD: return "NVD";
    case Measure::RNSS: return "RNSS";
    case Measure::JSD: return "JSD";
    case Measure::DNKT: return "DNKT";
    case Measure::DNKT_JSD: return "DNKT_JSD";
    case Measure::DNKT_NMD: return "DNKT_NMD";
    case Measure::DNKT_RNOD: return "DNKT_RNOD";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Measure m : kAllMeasures) {
    if (to_string(m) == upper) return m;
  }
  return std::nullopt;
}

std::vector<Measure> parse_measure_list(std::string_view csv) {
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', start), csv.size());
    std::string_view token = csv.substr(start, comma - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    if (!token.empty()) {
      const auto m = parse_measure(token);
      if (!m) throw Error(ErrorCode::UnknownMeasure, std::string(token));
      out.push_back(*m);
    }
    start = comma + 1;
  }
  return out;
}

double delta(DistanceScheme scheme, std::size_t i, std::size_t j, const Distribution& gold) {
  if (i >= gold.size() || j >= gold.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "class pair (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") with " +
                                                std::to_string(gold.size()) + " classes");
  }
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  if (scheme == DistanceScheme::Equidistant) return static_cast<double>(hi - lo);
  if (lo == hi) return 0.0;
  double enclosed = 0.0;
  for (std::size_t k = lo; k <= hi; ++k) enclosed += gold[k];
  return std::clamp(enclosed - (gold[i] + gold[j]) / 2.0, 0.0, 1.0);
}

double dw(std::size_t i, const Distribution& est, const Distribution& gold, DistanceScheme scheme) {
  check_aligned(est, gold);
  double sum = 0.0;
  for (std::size_t j = 0; j < gold.size(); ++j) {
    const double diff = est[j] - gold[j];
    sum += delta(scheme, i, j, gold) * diff * diff;
  }
  return sum;
}

double od(const Distribution& est, const Distribution& gold, DistanceScheme scheme) {
  check_aligned(est, gold);
  const auto support = gold.support();
  double sum = 0.0;
  for (std::size_t i : support) sum += dw(i, est, gold, scheme);
  return sum / static_cast<double>(support.size());
}

double adw(const Distribution& est, const Distribution& gold, DistanceScheme scheme) {
  check_aligned(est, gold);
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) sum += dw(i, est, gold, scheme);
  return sum / static_cast<double>(gold.size());
}

double rnod(const Distribution& est, const Distribution& gold) {
  return root_normalise(od(est, gold, DistanceScheme::Equidistant), gold.size());
}

double rnod2(const Distribution& est, const Distribution& gold) {
  return root_normalise(od(est, gold, DistanceScheme::GoldMass), gold.size());
}

double rnadw(const Distribution& est, const Distribution& gold) {
  return root_normalise(adw(est, gold, DistanceScheme::Equidistant), gold.size());
}

double rnadw2(const Distribution& est, const Distribution& gold) {
  return root_normalise(adw(est, gold, DistanceScheme::GoldMass), gold.size());
}

double rsnod(const Distribution& est, const Distribution& gold) {
  const double sod = (od(est, gold, DistanceScheme::Equidistant) +
                      od(gold, est, DistanceScheme::Equidistant)) /
                     2.0;
  return root_normalise(sod, gold.size());
}

double nmd(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  double cp = 0.0;
  double cp_gold = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    cp += est[i];
    cp_gold += gold[i];
    sum += std::abs(cp - cp_gold);
  }
  return sum / static_cast<double>(gold.size() - 1);
}

double nvd(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) sum += std::abs(est[i] - gold[i]);
  return sum / 2.0;
}

double rnss(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const double diff = est[i] - gold[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / 2.0);
}

namespace {

// Sum over a_i > 0 of a_i log2(a_i / b_i).
double kld_terms(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0.0) continue;
    if (b[i] <= 0.0) return std::numeric_limits<double>::infinity();
    sum += a[i] * std::log2(a[i] / b[i]);
  }
  return sum;
}

}  // namespace

double kld(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  return kld_terms(est.probs(), gold.probs());
}

double jsd(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  std::vector<double> mid(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) mid[i] = (est[i] + gold[i]) / 2.0;
  const double value = (kld_terms(est.probs(), mid) + kld_terms(gold.probs(), mid)) / 2.0;
  // Rounding can leave tiny negative residues when est == gold.
  return std::max(0.0, value);
}

double dnkt(const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  return (1.0 - tau_b(est.probs(), gold.probs(), kBinTieEps)) / 2.0;
}

double combine_harmonic(double d, double m) {
  if (!(d >= 0.0 && d <= 1.0) || !(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "harmonic inputs must lie in [0, 1], got " +
                                           std::to_string(d) + " and " + std::to_string(m));
  }
  if (d + m == 0.0) return 0.0;
  return 2.0 * d * m / (d + m);
}

double score(Measure id, const Distribution& est, const Distribution& gold) {
  check_aligned(est, gold);
  switch (id) {
    case Measure::NMD: return nmd(est, gold);
    case Measure::RNOD: return rnod(est, gold);
    case Measure::RNOD2: return rnod2(est, gold);
    case Measure::RNADW: return rnadw(est, gold);
    case Measure::RNADW2: return rnadw2(est, gold);
    case Measure::RSNOD: return rsnod(est, gold);
    case Measure::NVD: return nvd(est, gold);
    case Measure::RNSS: return rnss(est, gold);
    case Measure::JSD: return jsd(est, gold);
    case Measure::DNKT: return dnkt(est, gold);
    // Components may overshoot 1 by rounding at the extremes.
    case Measure::DNKT_JSD: return combine_harmonic(dnkt(est, gold), std::min(1.0, jsd(est, gold)));
    case Measure::DNKT_NMD: return combine_harmonic(dnkt(est, gold), std::min(1.0, nmd(est, gold)));
    case Measure::DNKT_RNOD:
      return combine_harmonic(dnkt(est, gold), std::min(1.0, rnod(est, gold)));
  }
  throw Error(ErrorCode::UnknownMeasure, "unhandled measure id");
}

}  // namespace quantdiv
