#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdbo/dyadic_blocks.hpp"

using namespace fdbo::dyadic;
using Catch::Approx;

TEST_CASE("resonance function") {
  CHECK(resonance(2.5, -2.5, 0.0) == 0.0);
  CHECK(resonance(1.0, 1.0, -2.0) == 2.0);
  CHECK_THROWS(resonance(1.0, 1.0, 1.0));
}

TEST_CASE("resonance is comparable to N_max N_min") {
  std::mt19937_64 rng(5);
  double lo = INFINITY, hi = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double N1 = std::ldexp(1.0, rng() % 6), N2 = std::ldexp(1.0, rng() % 6);
    std::uniform_real_distribution<double> a(N1, 2 * N1), b(N2, 2 * N2);
    const double x1 = a(rng), x2 = (rng() % 2 ? 1 : -1) * b(rng);
    const double x3 = -x1 - x2;
    if (x3 == 0.0) continue;
    const double m[3] = {std::abs(x1), std::abs(x2), std::abs(x3)};
    const double nmax = std::max({m[0], m[1], m[2]}), nmin = std::min({m[0], m[1], m[2]});
    const double r = std::abs(resonance(x1, x2, x3)) / (nmax * nmin);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  // |h| = 2 |x_max| |x_a| |x_b| / ... lies between N_max N_min and 2 N_max N_min
  CHECK(lo >= 1.0 - 1e-12);
  CHECK(hi <= 2.0 + 1e-12);
}

TEST_CASE("regime names") {
  CHECK(parse_regime("high-mod") == Regime::HighModulation);
  CHECK(regime_name(parse_regime("+-")) == "+-");
  CHECK_THROWS(parse_regime("low"));
}

TEST_CASE("admissibility relations") {
  CHECK_FALSE(BlockSpec{{16, 1, 1}, {1, 1, 1}, 1}.frequencies_admissible());
  CHECK(BlockSpec{{4, 4, 1}, {64, 64, 4}, 4}.admissible());
  CHECK_FALSE(BlockSpec{{4, 4, 4}, {1, 1, 1024}, 16}.modulations_admissible());
  CHECK_FALSE(BlockSpec{{4, 4, 4}, {1, 1, 1}, 1024}.resonance_admissible());
  CHECK(BlockSpec{{4, 4, 1}, {64, 64, 4}, 4}.in_regime(Regime::HighModulation));
}

TEST_CASE("block bounds") {
  const BlockSpec b{{4, 4, 1}, {64, 64, 4}, 4};
  CHECK(block_bound(b, Regime::HighModulation) == Approx(2.0 * 1.0));
  const BlockSpec c{{4, 4, 4}, {2, 16, 32}, 32};
  CHECK(block_bound(c, Regime::PlusPlus) == Approx(std::sqrt(2.0) * 2.0));
  // gamma = 1: L_min^{1/2} min(N_min^{1/2}, N_min^{-1/2} L_med^{1/2}), both branches
  const BlockSpec d{{8, 8, 1}, {4, 8, 8}, 8};
  CHECK(block_bound(d, Regime::PlusMinus, 1.0) == Approx(2.0 * std::min(1.0, std::sqrt(8.0))));
  const BlockSpec e{{8, 8, 4}, {1, 2, 32}, 32};
  CHECK(block_bound(e, Regime::PlusMinus, 1.0) == Approx(std::min(2.0, std::sqrt(2.0) / 2.0)));
  CHECK_THROWS(block_bound(e, Regime::PlusMinus, 0.0));
}

TEST_CASE("vacuous blocks estimate zero") {
  for (const BlockSpec& b : {BlockSpec{{16, 1, 1}, {1, 1, 1}, 1}, BlockSpec{{4, 4, 4}, {1, 1, 1024}, 16},
                             BlockSpec{{4, 4, 4}, {1024, 1024, 1024}, 1024}}) {
    const auto e = estimate_block_norm(b, Regime::HighModulation, 1.0);
    CHECK(e.samples == 0);
    CHECK(e.estimate <= 1e-3 * e.bound);
  }
}

TEST_CASE("high-modulation example is stable across resolutions") {
  const BlockSpec b{{4, 4, 1}, {64, 64, 4}, 4};
  std::vector<double> ratios;
  for (int res : {16, 32, 64}) {
    EstimateOptions opt;
    opt.resolution = res;
    opt.xi_refinement = 1;
    const auto e = estimate_block_norm(b, Regime::HighModulation, 1.0, opt);
    CHECK(e.samples > 0);
    ratios.push_back(e.ratio);
  }
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  CHECK(hi / lo < 1.2);
  CHECK(hi < 10.0);
}

TEST_CASE("estimates grow under nested refinement") {
  const BlockSpec b{{16, 8, 8}, {128, 16, 2}, 128};
  REQUIRE(b.in_regime(Regime::PlusPlus));
  double prev = 0.0;
  for (int res : {4, 8, 16}) {
    EstimateOptions opt;
    opt.resolution = res;
    const double e = estimate_block_norm(b, Regime::PlusPlus, 1.0, opt).estimate;
    CHECK(e >= prev * (1.0 - 1e-3));
    prev = e;
  }
  // ξ refinement alone
  EstimateOptions fine;
  fine.resolution = 16;
  fine.xi_refinement = 4;
  CHECK(estimate_block_norm(b, Regime::PlusPlus, 1.0, fine).estimate >= prev * (1.0 - 1e-3));
}

TEST_CASE("estimate options are validated") {
  const BlockSpec b{{4, 4, 1}, {64, 64, 4}, 4};
  EstimateOptions opt;
  opt.resolution = 7;
  CHECK_THROWS_AS(estimate_block_norm(b, Regime::HighModulation, 1.0, opt), std::invalid_argument);
  opt.resolution = 8;
  opt.xi_refinement = 0;
  CHECK_THROWS_AS(estimate_block_norm(b, Regime::HighModulation, 1.0, opt), std::invalid_argument);
  opt.xi_refinement = 2;
  opt.max_sweeps = 1;
  opt.tol = 1e-14;
  CHECK_THROWS_AS(estimate_block_norm(b, Regime::HighModulation, 1.0, opt), NonConvergenceError);
}

TEST_CASE("power iteration is not beaten by random restarts") {
  const BlockSpec b{{16, 8, 8}, {128, 16, 2}, 128};
  REQUIRE(b.in_regime(Regime::PlusPlus));
  EstimateOptions opt;
  opt.resolution = 8;
  const double base = estimate_block_norm(b, Regime::PlusPlus, 1.0, opt).estimate;
  REQUIRE(base > 0.0);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    opt.seed = seed;
    CHECK(estimate_block_norm(b, Regime::PlusPlus, 1.0, opt).estimate <= 1.05 * base);
  }
}

TEST_CASE("scaling consistency of the high-modulation bound") {
  const BlockSpec b{{4, 4, 1}, {64, 64, 4}, 4};
  const BlockSpec s{{8, 8, 2}, {256, 256, 16}, 16};
  CHECK(block_bound(s, Regime::HighModulation) == Approx(2.0 * std::sqrt(2.0) * block_bound(b, Regime::HighModulation)));
  EstimateOptions opt;
  opt.resolution = 16;
  const double r1 = estimate_block_norm(b, Regime::HighModulation, 1.0, opt).ratio;
  const double r2 = estimate_block_norm(s, Regime::HighModulation, 1.0, opt).ratio;
  CHECK(std::abs(r2 - r1) / r1 <= 0.2);
}

TEST_CASE("sweeps") {
  EstimateOptions opt;
  opt.resolution = 16;
  for (auto r : {Regime::HighModulation, Regime::PlusPlus, Regime::PlusMinus}) {
    const auto v = sweep_blocks(r, 4, 1.0, opt, 30);
    CHECK(!v.empty());
    for (const auto& e : v) {
      CHECK(e.block.in_regime(r));
      CHECK(e.samples > 0);
      CHECK(std::isfinite(e.ratio));
    }
    CHECK(sup_ratio(v) > 0.0);
  }
  CHECK(enumerate_blocks(Regime::PlusPlus, 1, 10, opt).empty());
  CHECK_THROWS(enumerate_blocks(Regime::PlusPlus, 9, 10, opt));
}
