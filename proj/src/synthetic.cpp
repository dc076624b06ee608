#include "quantdiv/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "quantdiv/error.hpp"
#include "quantdiv/random.hpp"

namespace quantdiv {

namespace {

constexpr std::uint64_t kCaseStream = 0xCA5E;
constexpr std::uint64_t kSystemStream = 0x5E75;

// Box-Muller on our own uniforms keeps the data identical across stdlibs.
double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string numbered(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
  return buf;
}

std::vector<std::string> class_labels(std::size_t classes) {
  std::vector<std::string> labels;
  const bool centred = classes % 2 == 1;
  for (std::size_t i = 0; i < classes; ++i) {
    labels.push_back(centred ? std::to_string(static_cast<long>(i) - static_cast<long>(classes / 2))
                             : std::to_string(i + 1));
  }
  return labels;
}

}  // namespace

SyntheticData generate_synthetic(const SynthConfig& cfg) {
  if (cfg.classes < 2) throw Error(ErrorCode::TooFewClasses, "need at least 2 classes");
  if (cfg.systems == 0 || cfg.cases == 0 || cfg.assessors == 0) {
    throw Error(ErrorCode::OutOfRange, "systems, cases and assessors must be positive");
  }
  const std::size_t k = cfg.classes;
  SyntheticData out;
  Dataset& d = out.dataset;
  d.class_labels = class_labels(k);

  for (std::size_t c = 0; c < cfg.cases; ++c) {
    Rng rng(derive_seed(cfg.seed, kCaseStream, c));
    const double centre = -0.5 + uniform01(rng) * static_cast<double>(k);
    const double width = 0.5 + uniform01(rng);
    std::vector<double> cdf(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double z = (static_cast<double>(i) - centre) / width;
      total += std::exp(-0.5 * z * z);
      cdf[i] = total;
    }
    std::vector<std::uint64_t> votes(k, 0);
    for (std::uint64_t a = 0; a < cfg.assessors; ++a) {
      const double u = uniform01(rng) * total;
      std::size_t i = 0;
      while (i + 1 < k && u >= cdf[i]) ++i;
      ++votes[i];
    }
    d.case_ids.push_back(numbered("c", c + 1, 4));
    d.gold.push_back(Distribution::from_votes(votes));
    d.votes.emplace_back(votes);
  }

  for (std::size_t s = 0; s < cfg.systems; ++s) {
    const double grade = cfg.systems > 1 ? static_cast<double>(s) / static_cast<double>(cfg.systems - 1) : 0.0;
    const double sigma = cfg.noise_min + (cfg.noise_max - cfg.noise_min) * grade;
    SystemRun run;
    run.system_id = numbered("sys", s + 1, 2);
    run.case_ids = d.case_ids;
    for (std::size_t c = 0; c < cfg.cases; ++c) {
      Rng rng(derive_seed(cfg.seed, kSystemStream, s * cfg.cases + c));
      std::vector<double> est(k);
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        est[i] = (d.gold[c][i] + cfg.floor) * std::exp(sigma * standard_normal(rng));
        total += est[i];
      }
      for (double& p : est) p /= total;
      run.est.push_back(Distribution::validate(est));
    }
    out.runs.push_back(std::move(run));
  }
  return out;
}

}  // namespace quantdiv
