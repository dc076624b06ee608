#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "quantdiv/distribution.hpp"

namespace quantdiv {

enum class Measure {
  NMD,
  RNOD,
  RNOD2,
  RNADW,
  RNADW2,
  RSNOD,
  NVD,
  RNSS,
  JSD,
  DNKT,
  DNKT_JSD,
  DNKT_NMD,
  DNKT_RNOD,
};

inline constexpr std::array<Measure, 13> kAllMeasures = {
    Measure::NMD,  Measure::RNOD, Measure::RNOD2, Measure::RNADW,    Measure::RNADW2,
    Measure::RSNOD, Measure::NVD, Measure::RNSS,  Measure::JSD,      Measure::DNKT,
    Measure::DNKT_JSD, Measure::DNKT_NMD, Measure::DNKT_RNOD};

/// Experiment suite in reporting order: nine base measures then the hybrids.
/// RSNOD is deliberately absent.
inline constexpr std::array<Measure, 12> kDefaultSuite = {
    Measure::NMD, Measure::RNADW, Measure::RNOD, Measure::RNADW2,   Measure::RNOD2,
    Measure::NVD, Measure::RNSS,  Measure::JSD,  Measure::DNKT,     Measure::DNKT_JSD,
    Measure::DNKT_NMD, Measure::DNKT_RNOD};

std::string_view to_string(Measure m);

/// Case-insensitive; nullopt for unknown names.
std::optional<Measure> parse_measure(std::string_view name);

/// Parses a comma separated list, throwing UnknownMeasure on a bad entry.
std::vector<Measure> parse_measure_list(std::string_view csv);

/// How the distance between two ordinal classes is defined.
enum class DistanceScheme {
  /// |i - j|
  Equidistant,
  /// Gold mass between the two classes inclusive, minus half the mass at
  /// each end. Can be zero for i != j when the enclosed gold mass is zero.
  GoldMass,
};

// Class indices below are 0-based positions.

double delta(DistanceScheme scheme, std::size_t i, std::size_t j, const Distribution& gold);

/// Distance-weighted sum of squared errors seen from class i.
double dw(std::size_t i, const Distribution& est, const Distribution& gold, DistanceScheme scheme);

/// Order-aware divergence: mean of dw over the gold support. Not symmetric.
double od(const Distribution& est, const Distribution& gold, DistanceScheme scheme);

/// Mean of dw over every class.
double adw(const Distribution& est, const Distribution& gold, DistanceScheme scheme);

double rnod(const Distribution& est, const Distribution& gold);
double rnod2(const Distribution& est, const Distribution& gold);
double rnadw(const Distribution& est, const Distribution& gold);
double rnadw2(const Distribution& est, const Distribution& gold);

/// Symmetrised RNOD, equidistant.
double rsnod(const Distribution& est, const Distribution& gold);

/// Normalised match distance (1-D earth mover's distance over |C|-1).
double nmd(const Distribution& est, const Distribution& gold);

double nvd(const Distribution& est, const Distribution& gold);
double rnss(const Distribution& est, const Distribution& gold);

/// Base-2 KL divergence summed over est > 0. Infinite when gold is zero
/// where est is not.
double kld(const Distribution& est, const Distribution& gold);
double jsd(const Distribution& est, const Distribution& gold);

/// (1 - tau_b) / 2 over the bin probabilities, ties within kBinTieEps.
double dnkt(const Distribution& est, const Distribution& gold);

/// Harmonic mean of two [0,1] scores, 0 when both are 0.
double combine_harmonic(double d, double m);

double score(Measure id, const Distribution& est, const Distribution& gold);

}  // namespace quantdiv
