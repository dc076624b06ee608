#pragma once

#include <cstdint>
#include <vector>

#include "quantdiv/dataset.hpp"

namespace quantdiv {

/// Parameters of the bundled synthetic benchmark.
///
/// Each case gets a discretised Gaussian "true" distribution over the classes
/// (random centre and width); the gold distribution is built from `assessors`
/// votes drawn from it. System s perturbs the gold distribution with
/// multiplicative log-normal noise whose scale grows linearly from noise_min
/// (first system) to noise_max (last system), so the systems have a graded
/// true quality.
struct SynthConfig {
  std::size_t systems = 12;
  std::size_t cases = 300;
  std::size_t classes = 5;
  std::uint64_t assessors = 20;
  double noise_min = 0.3;
  double noise_max = 0.6;
  /// Added to every gold bin before perturbation so empty classes can
  /// receive mass.
  double floor = 0.02;
  std::uint64_t seed = 2022;
};

struct SyntheticData {
  Dataset dataset;
  std::vector<SystemRun> runs;
};

SyntheticData generate_synthetic(const SynthConfig& cfg);

}  // namespace quantdiv
