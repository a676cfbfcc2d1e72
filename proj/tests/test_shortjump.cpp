#include <doctest.h>

#include <cmath>

#include "jumplab/shortjump.hpp"
#include "jumplab/variation.hpp"

using namespace jumplab;

namespace {
BitString with_weight(RngStream& rng, int n, int w) {
  BitString x(n);
  std::vector<int> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<size_t>(i)] = i;
  for (int i = 0; i < w; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
    std::swap(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]);
    x.flip(pos[static_cast<size_t>(i)]);
  }
  return x;
}
}  // namespace

TEST_CASE("config derivation") {
  ShortJumpConfig cfg = ShortJumpConfig::from(64, 2);
  CHECK(cfg.c == 4.0);
  CHECK(cfg.t == 6);  // eps = 1/2 - ln 2 / ln 64 = 1/3, t = ceil(4 / (2/3))
  CHECK(ShortJumpConfig::from(64, 0).t == 4);  // eps = 1/2
}

TEST_CASE("simulation is exact wherever the fitness is visible (n <= 12)") {
  RngStream rng(41);
  for (int ell : {0, 1, 2}) {
    QueryOracle o(JumpObjective(12, ell));
    ShortJumpConfig cfg = ShortJumpConfig::from(12, ell);
    for (uint64_t m = 0; m < (uint64_t{1} << 12); ++m) {
      BitString x(12);
      x.words()[0] = m;
      Sample s = o.submit(x);
      if (s.fitness != 0) {
        uint64_t before = o.query_count();
        REQUIRE(simulate_onemax(o, rng, s, ell, cfg) == x.weight());
        REQUIRE(o.query_count() == before);  // the visible branch costs no extra query
      }
    }
  }
}

TEST_CASE("simulation recovers blanked weights near the optimum") {
  const int n = 200, ell = 2;
  ShortJumpConfig cfg = ShortJumpConfig::from(n, ell);
  cfg.t = 8;
  QueryOracle o(JumpObjective(n, ell));
  RngStream rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    int w = n - 2 + rep % 2;  // 198 or 199, both blanked
    Sample s = o.submit(with_weight(rng, n, w));
    REQUIRE(s.fitness == 0);
    // failure probability ~ (ell^2/(n-ell))^8 ~ 3e-14: all 200 must be exact
    REQUIRE(simulate_onemax(o, rng, s, ell, cfg) == w);
  }
}

TEST_CASE("simulation error rate is within the stated bound") {
  // n = 64, ell = 4, t = 2: bound (ell^2/(n-ell))^t = (16/60)^2 = 0.0711
  const int n = 64, ell = 4;
  ShortJumpConfig cfg = ShortJumpConfig::from(n, ell);
  cfg.t = 2;
  QueryOracle o(JumpObjective(n, ell));
  RngStream rng(43);
  const int trials = 4000;
  long wrong = 0;
  for (int rep = 0; rep < trials; ++rep) {
    int w = n - ell + static_cast<int>(rng.below(ell));  // blanked band near the top
    Sample s = o.submit(with_weight(rng, n, w));
    wrong += (simulate_onemax(o, rng, s, ell, cfg) != w);
    if (o.query_count() > 400000) o.reset();
  }
  double bound = std::pow(16.0 / 60.0, 2);
  double rate = static_cast<double>(wrong) / trials;
  CHECK(rate <= bound + 5 * std::sqrt(bound * (1 - bound) / trials));
}

TEST_CASE("learn_ell infers the plateau width from either side") {
  RngStream rng(44);
  for (auto [ell, w] : {std::pair{3, 19}, {1, 19}, {3, 3}, {2, 0}}) {
    QueryOracle o(JumpObjective(20, ell));
    Sample zero = o.submit(with_weight(rng, 20, w));
    REQUIRE(zero.fitness == 0);
    CHECK(learn_ell(o, rng, zero, 8) == ell);
  }
  QueryOracle o(JumpObjective(20, 2));
  Sample visible = o.submit(with_weight(rng, 20, 10));
  CHECK_THROWS_AS(learn_ell(o, rng, visible, 8), std::invalid_argument);
}

TEST_CASE("wrapper optimizes with ell unknown") {
  const int n = 128, ell = 2;
  RlsSolver rls;
  int ok = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto budget = static_cast<uint64_t>(20.0 * n * std::log(n));
    QueryOracle o(JumpObjective(n, ell), budget);
    RngStream rng(seed);
    ShortJumpConfig cfg = ShortJumpConfig::from(n, ell);
    cfg.known_ell = false;
    OptResult res = shortjump_optimize(o, rng, cfg, rls, budget / 4);
    ok += res.found;
    if (res.found) CHECK(*o.first_hit() <= budget);
  }
  CHECK(ok >= 19);
}

TEST_CASE("ell = 0 degenerates to the plain solver on OneMax") {
  const int n = 64;
  RlsSolver rls;
  QueryOracle o(JumpObjective(n, 0), 20000);
  RngStream rng(7);
  ShortJumpConfig cfg = ShortJumpConfig::from(n, 0);
  OptResult res = shortjump_optimize(o, rng, cfg, rls, 20000);
  CHECK(res.found);
  // every evaluation away from 0^n is a single query, so the trace length is
  // what plain RLS would use
  CHECK(o.query_count() <= 3000);
}
