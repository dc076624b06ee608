#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "permutations.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/rank_correlation.hpp"

using namespace quantdiv;
using V = std::vector<double>;

TEST_CASE("pair counts on the DNKT worked example") {
  const V est{0.31, 0.30, 0.20, 0.19};
  const V gold{0.4, 0.3, 0.2, 0.1};
  const PairCounts pc = pair_counts(est, gold, kBinTieEps);
  CHECK(pc.conc == 6);
  CHECK(pc.disc == 0);
  CHECK(pc.tied_x == 0);
  CHECK(pc.tied_y == 0);
}

TEST_CASE("a uniform list ties every pair") {
  const PairCounts pc = pair_counts(V{0.1, 0.5, 0.3, 0.1}, V(4, 0.25), kBinTieEps);
  CHECK(pc.conc == 0);
  CHECK(pc.disc == 0);
  CHECK(pc.tied_y == 6);
  CHECK(pc.tied_x == 1);
}

TEST_CASE("full reversal is all discordant") {
  const PairCounts pc = pair_counts(V{1, 2, 3}, V{3, 2, 1}, 0.0);
  CHECK(pc.conc == 0);
  CHECK(pc.disc == 3);
}

TEST_CASE("tie tolerance is inclusive") {
  const PairCounts pc = pair_counts(V{0.1, 0.1 + 1e-10, 0.3}, V{1, 2, 3}, 1e-9);
  CHECK(pc.tied_x == 1);
  CHECK(pc.conc == 2);
}

TEST_CASE("tau_b values") {
  CHECK(tau_b(V(4, 0.25), V(4, 0.25), kBinTieEps) == 0.0);
  CHECK(tau_b(V{0.1, 0.2, 0.3, 0.4}, V{0.1, 0.2, 0.3, 0.4}, 0.0) == 1.0);
  CHECK(tau_b(V{0.5, 0.3, 0.2}, V{0.2, 0.3, 0.5}, 0.0) == -1.0);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(pair_counts(V{1, 2}, V{1, 2, 3}, 0.0), Error);
  try {
    tau_b(V{1}, V{1}, 0.0);
    FAIL("expected TooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooShort);
  }
  try {
    tau_with_ci(V{1, 2}, V{1, 2});
    FAIL("expected TooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooShort);
  }
}

TEST_CASE("tau_b agrees exactly with brute-force enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len(2, 25);
  std::uniform_int_distribution<int> level(0, 4);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    V xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      // Coarse levels inject ties on roughly half of the trials.
      xs[i] = trial % 2 ? level(rng) : noise(rng);
      ys[i] = trial % 3 ? level(rng) * 0.25 : noise(rng);
    }
    CHECK(tau_b(xs, ys, 0.0) == oracle::tau_b(xs, ys, 0.0));
    CHECK(tau_b(xs, ys, 0.3) == oracle::tau_b(xs, ys, 0.3));
  }
}

TEST_CASE("antisymmetry under reversal and invariance under monotone maps") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 20;
    V xs(n), ys(n), flipped(n), warped(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = noise(rng);
      ys[i] = noise(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
      flipped[i] = -ys[i];
      warped[i] = std::exp(3.0 * xs[i]) + 7.0;
    }
    CHECK(tau_b(xs, flipped, 0.0) == doctest::Approx(-tau_b(xs, ys, 0.0)).epsilon(1e-15));
    CHECK(tau_b(warped, ys, 0.0) == tau_b(xs, ys, 0.0));
  }
}

TEST_CASE("degenerate intervals") {
  const V ids = testutil::identity(12);
  const TauResult same = tau_with_ci(ids, ids);
  CHECK(same.tau == 1.0);
  CHECK(same.ci_high == 1.0);
  CHECK(same.n == 12);

  V reversed(ids.rbegin(), ids.rend());
  const TauResult rev = tau_with_ci(ids, reversed);
  CHECK(rev.tau == -1.0);
  CHECK(rev.ci_low == -1.0);

  const TauResult lc = tau_with_ci(ids, ids, 0.95, CiMethod::LongCliff);
  CHECK(lc.ci_high == 1.0);
}

TEST_CASE("Fisher-z intervals reproduce published 12-system and 19-system brackets") {
  struct Cell {
    std::size_t n, inversions;
    double tau, lo, hi;
  };
  // tau = 1 - 2 * inversions / (n(n-1)/2).
  const Cell cells[] = {
      {12, 3, 0.909, 0.787, 0.963},  {12, 5, 0.848, 0.659, 0.936},
      {12, 6, 0.818, 0.600, 0.923},  {12, 2, 0.939, 0.854, 0.975},
      {12, 1, 0.970, 0.927, 0.988},  {12, 11, 0.667, 0.334, 0.852},
      {12, 14, 0.576, 0.196, 0.806}, {12, 15, 0.545, 0.152, 0.789},
      {12, 12, 0.636, 0.285, 0.837}, {12, 7, 0.788, 0.543, 0.909},
      {19, 17, 0.801, 0.645, 0.893},
  };
  for (const Cell& c : cells) {
    CAPTURE(c.tau);
    const TauResult r = tau_with_ci(testutil::identity(c.n), testutil::with_inversions(c.n, c.inversions));
    CHECK(r.tau == doctest::Approx(c.tau).epsilon(0.0006));
    CHECK(std::abs(r.ci_low - c.lo) <= 0.0015);
    CHECK(std::abs(r.ci_high - c.hi) <= 0.0015);
  }
}

TEST_CASE("intervals contain tau, stay in range and shrink with n") {
  for (CiMethod method : {CiMethod::FisherZ, CiMethod::LongCliff}) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise;
    double previous_width = 3.0;
    for (std::size_t n : {10u, 40u, 160u, 640u}) {
      V xs(n), ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = noise(rng);
        ys[i] = xs[i] + 0.8 * noise(rng);
      }
      const TauResult r = tau_with_ci(xs, ys, 0.95, method);
      CHECK(r.ci_low <= r.tau);
      CHECK(r.tau <= r.ci_high);
      CHECK(r.ci_low >= -1.0);
      CHECK(r.ci_high <= 1.0);
      const double width = r.ci_high - r.ci_low;
      CHECK(width < previous_width);
      previous_width = width;
    }
  }
}
