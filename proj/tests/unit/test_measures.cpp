#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/measures.hpp"

using namespace quantdiv;
using V = std::vector<double>;

namespace {

Distribution D(V v) { return Distribution::validate(v); }

constexpr auto kEq = DistanceScheme::Equidistant;
constexpr auto kGm = DistanceScheme::GoldMass;

}  // namespace

TEST_CASE("measure names round-trip") {
  for (Measure m : kAllMeasures) CHECK(parse_measure(to_string(m)) == m);
  CHECK(parse_measure("rnod2") == Measure::RNOD2);
  CHECK_FALSE(parse_measure("KLD").has_value());
  CHECK(parse_measure_list(" NMD, rnod ,") == std::vector<Measure>{Measure::NMD, Measure::RNOD});
  CHECK_THROWS_AS(parse_measure_list("NMD,XYZ"), Error);
}

TEST_CASE("delta") {
  const auto gold = D({0.5, 0, 0.5});
  CHECK(delta(kEq, 0, 3, D({0.25, 0.25, 0.25, 0.25})) == 3.0);
  CHECK(delta(kGm, 1, 1, gold) == 0.0);
  CHECK(delta(kGm, 0, 2, gold) == 0.5);
  CHECK(delta(kGm, 2, 0, gold) == 0.5);
  // No gold mass strictly between two empty classes: zero distance.
  CHECK(delta(kGm, 1, 2, D({1, 0, 0})) == 0.0);
  try {
    delta(kEq, 0, 3, gold);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}

TEST_CASE("delta bounds and symmetry") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const auto gold = D(oracle::random_simplex(rng, k, 0.3));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(delta(kGm, i, j, gold) <= 1.0);
        CHECK(delta(kGm, i, j, gold) >= 0.0);
        CHECK(delta(kEq, i, j, gold) <= static_cast<double>(k - 1));
        CHECK(delta(kGm, i, j, gold) == delta(kGm, j, i, gold));
      }
    }
  }
}

TEST_CASE("dw") {
  CHECK(dw(0, D({0.5, 0.5}), D({0.5, 0.5}), kEq) == 0.0);
  CHECK(dw(0, D({0, 1}), D({1, 0}), kEq) == 1.0);
  CHECK(dw(0, D({0, 0, 1}), D({1, 0, 0}), kEq) == 2.0);
  CHECK_THROWS_AS(dw(0, D({0, 1}), D({1, 0, 0}), kEq), Error);
}

TEST_CASE("od, rnod and rnod2") {
  const auto p = D({0.1, 0.6, 0.3});
  CHECK(od(p, p, kEq) == 0.0);
  CHECK(od(D({0, 1}), D({1, 0}), kEq) == 1.0);
  CHECK(od(D({0, 1, 0}), D({0.5, 0, 0.5}), kGm) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(rnod(p, p) == 0.0);
  CHECK(rnod(D({0, 1}), D({1, 0})) == 1.0);
  CHECK(rnod2(D({0, 1, 0}), D({0.5, 0, 0.5})) == doctest::Approx(std::sqrt(0.375 / 2)));
  CHECK(rnod2(D({0, 1, 0}), D({0.5, 0, 0.5})) == doctest::Approx(0.433013).epsilon(1e-6));
}

TEST_CASE("adw and rnadw") {
  const auto p = D({0.2, 0.2, 0.6});
  CHECK(adw(p, p, kEq) == 0.0);
  CHECK(adw(D({0, 1}), D({1, 0}), kEq) == 1.0);
  CHECK(rnadw(p, p) == 0.0);
  CHECK(rnadw(D({0, 1}), D({1, 0})) == 1.0);
  CHECK(rnadw2(p, p) == 0.0);
}

TEST_CASE("rsnod") {
  const auto p = D({0.2, 0.2, 0.6});
  CHECK(rsnod(p, p) == 0.0);
  CHECK(rsnod(D({0, 1}), D({1, 0})) == 1.0);
}

TEST_CASE("nmd") {
  const auto p = D({0.2, 0.2, 0.6});
  CHECK(nmd(p, p) == 0.0);
  CHECK(nmd(D({0, 0, 1}), D({1, 0, 0})) == 1.0);
  CHECK(nmd(D({0, 1, 0}), D({1, 0, 0})) == 0.5);
}

TEST_CASE("nominal measures") {
  const auto p = D({0.2, 0.2, 0.6});
  CHECK(nvd(p, p) == 0.0);
  CHECK(nvd(D({0, 1}), D({1, 0})) == 1.0);
  CHECK(nvd(D({0.5, 0.5}), D({1, 0})) == 0.5);
  CHECK(rnss(p, p) == 0.0);
  CHECK(rnss(D({0, 1}), D({1, 0})) == 1.0);
  CHECK(rnss(D({0.5, 0.5}), D({1, 0})) == 0.5);
  CHECK(jsd(p, p) == 0.0);
  CHECK(jsd(D({1, 0}), D({0, 1})) == 1.0);
  CHECK(std::isinf(kld(D({0.5, 0.5}), D({1, 0}))));
  CHECK(kld(D({1, 0}), D({0.5, 0.5})) == 1.0);
}

TEST_CASE("dnkt") {
  CHECK(dnkt(D({0.31, 0.30, 0.20, 0.19}), D({0.4, 0.3, 0.2, 0.1})) == 0.0);
  CHECK(dnkt(D({0.7, 0.1, 0.1, 0.1}), D({0.25, 0.25, 0.25, 0.25})) == 0.5);
  CHECK(dnkt(D({0.2, 0.3, 0.5}), D({0.5, 0.3, 0.2})) == 1.0);
  CHECK(dnkt(D({0.25, 0.25, 0.25, 0.25}), D({0.25, 0.25, 0.25, 0.25})) == 0.5);
}

TEST_CASE("combine_harmonic") {
  CHECK(combine_harmonic(0.0, 0.0) == 0.0);
  CHECK(combine_harmonic(0.5, 0.5) == 0.5);
  CHECK(combine_harmonic(0.0, 0.8) == 0.0);
  CHECK(combine_harmonic(0.2, 0.6) == doctest::Approx(0.3));
  try {
    combine_harmonic(1.5, 0.1);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
}

TEST_CASE("score dispatch") {
  const auto p = D({0.1, 0.2, 0.7});
  CHECK(score(Measure::NMD, p, p) == 0.0);
  CHECK(score(Measure::DNKT_RNOD, D({0, 1}), D({1, 0})) == 1.0);
  CHECK(score(Measure::DNKT_JSD, p, p) == 0.0);
  CHECK(score(Measure::DNKT_NMD, D({0.2, 0.8}), D({0.1, 0.9})) == 0.0);
  CHECK_THROWS_AS(score(Measure::NVD, D({0.5, 0.5}), p), Error);
}

TEST_CASE("measures match independent reference formulas") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const V pv = oracle::random_simplex(rng, k, 0.25);
    const V gv = oracle::random_simplex(rng, k, 0.25);
    const auto p = D(pv), g = D(gv);
    CHECK(nmd(p, g) == doctest::Approx(oracle::nmd_transport(pv, gv)).epsilon(1e-12));
    CHECK(od(p, g, kEq) == doctest::Approx(oracle::od(pv, gv, false)).epsilon(1e-12));
    CHECK(od(p, g, kGm) == doctest::Approx(oracle::od(pv, gv, true)).epsilon(1e-12));
    CHECK(adw(p, g, kGm) == doctest::Approx(oracle::adw(pv, gv, true)).epsilon(1e-12));
    CHECK(jsd(p, g) == doctest::Approx(oracle::jsd(pv, gv)).epsilon(1e-12));
    CHECK(dnkt(p, g) == (1.0 - oracle::tau_b(pv, gv, 1e-9)) / 2.0);
  }
}

TEST_CASE("hybrids vanish exactly when a component vanishes") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const auto g = D(oracle::random_simplex(rng, k, 0.2));
    const auto p = trial % 4 == 0 ? g : D(oracle::random_simplex(rng, k, 0.2));
    const struct {
      Measure hybrid, component;
    } pairs[] = {{Measure::DNKT_JSD, Measure::JSD},
                 {Measure::DNKT_NMD, Measure::NMD},
                 {Measure::DNKT_RNOD, Measure::RNOD}};
    for (const auto& h : pairs) {
      const double d = dnkt(p, g);
      const double m = score(h.component, p, g);
      CHECK((score(h.hybrid, p, g) == 0.0) == (d == 0.0 || m == 0.0));
      if (d == 0.0 && m == 0.0) CHECK(score(h.hybrid, p, g) == 0.0);
    }
  }
}

TEST_CASE("RNOD is asymmetric when gold has an empty class") {
  const auto p = D({0.2, 0.3, 0.5});
  const auto g = D({1.0, 0.0, 0.0});
  CHECK(od(p, g, kEq) == doctest::Approx(0.59));
  CHECK(od(g, p, kEq) == doctest::Approx(0.95));
  CHECK(std::abs(rnod(p, g) - rnod(g, p)) > 1e-6);
  CHECK(std::abs(rnod2(p, g) - rnod2(g, p)) > 1e-6);
}

TEST_CASE("GoldMass distances make ADW depend on which side is gold") {
  // The GoldMass distance is built from the gold distribution, so swapping
  // the arguments changes the weights: 0.875/3 one way, 1.75/3 the other.
  const auto est = D({0, 1, 0});
  const auto gold = D({0.5, 0, 0.5});
  CHECK(adw(est, gold, kGm) == doctest::Approx(0.875 / 3));
  CHECK(adw(gold, est, kGm) == doctest::Approx(1.75 / 3));
  CHECK(adw(est, gold, kEq) == adw(gold, est, kEq));
}

TEST_CASE("ordinal awareness") {
  const auto near = D({0, 1, 0});
  const auto far = D({0, 0, 1});
  const auto point = D({1, 0, 0});
  for (Measure m : {Measure::NMD, Measure::RNOD, Measure::RNADW}) {
    CAPTURE(to_string(m));
    CHECK(score(m, near, point) < score(m, far, point));
  }
  // Against a point-mass gold every GoldMass distance from the occupied
  // class is 0.5, so the two misses cost the same.
  for (Measure m : {Measure::RNOD2, Measure::RNADW2}) {
    CAPTURE(to_string(m));
    CHECK(score(m, near, point) == score(m, far, point));
  }
  // With gold mass in the middle class the GoldMass variants are ordinal too.
  const auto spread = D({0.6, 0.2, 0.2});
  for (Measure m : {Measure::NMD, Measure::RNOD, Measure::RNOD2, Measure::RNADW, Measure::RNADW2}) {
    CAPTURE(to_string(m));
    CHECK(score(m, near, spread) < score(m, far, spread));
  }
  CHECK(od(near, spread, kGm) == doctest::Approx(0.776 / 3));
  CHECK(od(far, spread, kGm) == doctest::Approx(0.896 / 3));
  for (Measure m : {Measure::NVD, Measure::RNSS, Measure::JSD}) {
    CAPTURE(to_string(m));
    CHECK(score(m, near, point) == score(m, far, point));
  }
}

TEST_CASE("symmetric measures and conditional OD symmetry") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const auto p = D(oracle::random_simplex(rng, k, 0.3));
    const auto g = D(oracle::random_simplex(rng, k, 0.3));
    for (Measure m : {Measure::NMD, Measure::RNADW, Measure::RSNOD, Measure::NVD, Measure::RNSS,
                      Measure::JSD, Measure::DNKT}) {
      CAPTURE(to_string(m));
      CHECK(std::abs(score(m, p, g) - score(m, g, p)) <= 1e-12);
    }
    const auto pp = D(oracle::random_simplex(rng, k, 0.0, true));
    const auto gp = D(oracle::random_simplex(rng, k, 0.0, true));
    CHECK(std::abs(od(pp, gp, kEq) - od(gp, pp, kEq)) <= 1e-12);
  }
}
