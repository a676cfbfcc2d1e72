#include <doctest.h>

#include <cmath>
#include <set>

#include "jumplab/extremejump.hpp"
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

// opposing k-pair on a weight-n/2 base: x flips k zeros, y flips k ones
std::pair<Sample, Sample> opposing_pair(QueryOracle& o, RngStream& rng, int k) {
  const int n = o.n();
  BitString m = with_weight(rng, n, n / 2);
  BitString x = m, y = m;
  int flipped = 0;
  for (int i = 0; i < n && flipped < k; ++i)
    if (!m.test(i)) {
      x.flip(i);
      ++flipped;
    }
  flipped = 0;
  for (int i = 0; i < n && flipped < k; ++i)
    if (m.test(i)) {
      y.flip(i);
      ++flipped;
    }
  return {o.submit(x), o.submit(y)};
}
}  // namespace

TEST_CASE("symmetric state bookkeeping") {
  for (int w = 0; w <= 16; ++w) {
    SymmetricState st = symmetric_state(16, w);
    CHECK(st.a_sym + st.d == 8);
    CHECK((st.sgn == 0) == (st.d == 0));
    CHECK(st.a_sym == std::min(w, 16 - w));
  }
}

TEST_CASE("bit addressing visits every position exactly once") {
  const int n = 20;
  QueryOracle o(JumpObjective(n, n / 2 - 1));
  RngStream rng(71);
  Sample x = o.submit(with_weight(rng, n, n / 2));
  BitString bx = testing::reveal(o, x.handle);
  std::set<int> addressed;
  Sample z_prev = x;
  std::vector<Sample> ys;
  for (int i = 1; i <= n; ++i) {
    Sample z = sample_flip_where_equal(o, rng, z_prev.handle, x.handle, 1);
    Sample y = sample_select_bit(o, x.handle, z_prev.handle, z.handle);
    BitString by = testing::reveal(o, y.handle);
    CHECK(distance(by, bx) == 1);
    for (int pos = 0; pos < n; ++pos)
      if (by.test(pos) != bx.test(pos)) addressed.insert(pos);
    ys.push_back(y);
    z_prev = z;
  }
  CHECK(addressed.size() == static_cast<size_t>(n));

  // probe fitness is 0 iff the addressed bits have equal values in x
  auto bit_of = [&](const Sample& y) {
    BitString by = testing::reveal(o, y.handle);
    for (int pos = 0; pos < n; ++pos)
      if (by.test(pos) != bx.test(pos)) return pos;
    return -1;
  };
  int p1 = bit_of(ys[0]);
  for (int i = 2; i <= n; ++i) {
    Sample probe = sample_select_bit(o, x.handle, ys[0].handle, ys[static_cast<size_t>(i - 1)].handle);
    bool same = bx.test(p1) == bx.test(bit_of(ys[static_cast<size_t>(i - 1)]));
    CHECK((probe.fitness == 0) == same);
  }
}

TEST_CASE("ternary extreme succeeds on every seed") {
  for (int n : {20, 100}) {
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      QueryOracle o(JumpObjective(n, n / 2 - 1), static_cast<uint64_t>(24 * n + 300));
      o.set_stop_on_optimum(true);
      RngStream rng(seed);
      OptResult res = ternary_extreme_optimize(o, rng, static_cast<uint64_t>(6 * n + 75));
      REQUIRE(res.found);
      if (n == 100) CHECK(*o.first_hit() <= static_cast<uint64_t>(6 * n));
    }
  }
}

TEST_CASE("movefirst at k = 1 classifies perfectly") {
  const int n = 32;
  RngStream rng(72);
  for (int rep = 0; rep < 200; ++rep) {
    QueryOracle o(JumpObjective(n, n / 2 - 1));
    auto [x, y] = opposing_pair(o, rng, 1);
    Sample moved = movefirst(o, rng, x, y, 1);
    BitString bx = testing::reveal(o, x.handle);
    BitString by = testing::reveal(o, y.handle);
    BitString bm = testing::reveal(o, moved.handle);
    REQUIRE(distance(bm, bx) == 1);
    REQUIRE(distance(bm, by) == 3);
    REQUIRE(symmetric_state(n, weight(bm)).d == 2);
  }
}

TEST_CASE("movefirst misclassification rate at n = 64, k = 5") {
  const int n = 64, k = 5;
  RngStream rng(73);
  long wrong = 0;
  const int calls = 10000;
  QueryOracle o(JumpObjective(n, n / 2 - 1));
  for (int rep = 0; rep < calls; ++rep) {
    if (o.query_count() > 2000000) o.reset();
    auto [x, y] = opposing_pair(o, rng, k);
    Sample moved = movefirst(o, rng, x, y, k);
    BitString bm = testing::reveal(o, moved.handle);
    BitString by = testing::reveal(o, y.handle);
    if (symmetric_state(n, weight(bm)).d != k + 1 || distance(bm, by) != 2 * k + 1) ++wrong;
  }
  double bound = 1.0 / (n * n);
  double rate = static_cast<double>(wrong) / calls;
  CHECK(rate <= bound + 5 * std::sqrt(bound * (1 - bound) / calls));
}

TEST_CASE("opposing pairs pass the mix validation, non-opposing pairs fail it") {
  const int n = 32;
  RngStream rng(74);
  QueryOracle o(JumpObjective(n, n / 2 - 1));
  auto [x, y] = opposing_pair(o, rng, 1);
  for (int i = 0; i < 100; ++i)
    REQUIRE(sample_mix(o, rng, x.handle, y.handle).fitness == n / 2);

  // both-sides-up pair: mix detects with probability 1/2
  BitString m = with_weight(rng, n, n / 2);
  BitString a = m, b = m;
  int flips = 0;
  for (int i = 0; i < n && flips < 2; ++i)
    if (!m.test(i)) {
      (flips == 0 ? a : b).flip(i);
      ++flips;
    }
  Sample sa = o.submit(a), sb = o.submit(b);
  const int trials = 4000;
  long detected = 0;
  for (int i = 0; i < trials; ++i)
    detected += sample_mix(o, rng, sa.handle, sb.handle).fitness != n / 2;
  double rate = static_cast<double>(detected) / trials;
  CHECK(std::fabs(rate - 0.5) <= 5 * std::sqrt(0.25 / trials));
}

TEST_CASE("opposing-pair chain keeps its invariants under movefirst") {
  const int n = 64;
  RngStream rng(75);
  long checks = 0, violations = 0;
  for (int run = 0; run < 10; ++run) {
    QueryOracle o(JumpObjective(n, n / 2 - 1));
    auto [x, y] = opposing_pair(o, rng, 1);
    for (int k = 1; k <= n / 2 - 1; ++k) {
      Sample xp = movefirst(o, rng, x, y, k);
      Sample yp = movefirst(o, rng, y, x, k);
      x = xp;
      y = yp;
      SymmetricState sx = symmetric_state(n, weight(testing::reveal(o, x.handle)));
      SymmetricState sy = symmetric_state(n, weight(testing::reveal(o, y.handle)));
      int dist = distance(testing::reveal(o, x.handle), testing::reveal(o, y.handle));
      ++checks;
      if (!(sx.sgn * sy.sgn == -1 && sx.d == k + 1 && sy.d == k + 1 && dist == 2 * (k + 1)))
        ++violations;
    }
  }
  CHECK(static_cast<double>(violations) / static_cast<double>(checks) <= 0.05);
}

TEST_CASE("binary extreme optimizer (n = 64, 20 seeds)") {
  const int n = 64;
  int ok = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto budget = static_cast<uint64_t>(32.0 * n * std::log2(n));
    QueryOracle o(JumpObjective(n, n / 2 - 1), budget);
    o.set_stop_on_optimum(true);
    RngStream rng(seed);
    ok += binary_extreme_optimize(o, rng, budget / 4).found;
  }
  CHECK(ok >= 18);
}

TEST_CASE("estimate_sym boundary branches") {
  const int n = 16;
  ExtremeEstimatorConfig cfg;
  RngStream rng(76);
  QueryOracle o(JumpObjective(n, n / 2 - 1));

  // a = n/2 - 1: read the fitness directly
  Sample mid = o.submit(with_weight(rng, n, n / 2));
  CHECK(estimate_sym(o, rng, mid, n / 2 - 1, cfg) == n / 2);
  Sample off = o.submit(with_weight(rng, n, n / 2 - 2));
  CHECK(estimate_sym(o, rng, off, n / 2 - 1, cfg) == n / 2 - 2);

  // a = 1 with y = 0^n: probing the complement queries the optimum
  Sample zeros = o.submit(BitString(n));
  CHECK(estimate_sym(o, rng, zeros, 1, cfg) == 0);
  CHECK(o.optimum_found());

  QueryOracle o2(JumpObjective(n, n / 2 - 1));
  Sample two_off = o2.submit(with_weight(rng, n, 2));
  CHECK(estimate_sym(o2, rng, two_off, 1, cfg) == 2);
  CHECK_THROWS_AS(estimate_sym(o2, rng, two_off, 0, cfg), std::invalid_argument);
}

TEST_CASE("estimate_sym decides a = 3 vs a_sym = 4 reliably (n = 16, K = 4)") {
  const int n = 16;
  ExtremeEstimatorConfig cfg{4.0};
  RngStream rng(77);
  long correct = 0;
  const int trials = 1000;
  QueryOracle o(JumpObjective(n, n / 2 - 1));
  for (int rep = 0; rep < trials; ++rep) {
    o.reset();
    Sample y = o.submit(with_weight(rng, n, rng.coin() ? 4 : n - 4));  // a_sym = 4
    correct += (estimate_sym(o, rng, y, 3, cfg) == 4);
  }
  CHECK(static_cast<double>(correct) / trials >= 0.95);
}

TEST_CASE("estimate_sym uses the flip parity matching the candidates") {
  // a even: candidates odd, n/2 - 1 flips; a odd: candidates even, n/2 flips.
  // Exercise both parities and check correctness on each side.
  const int n = 16;
  ExtremeEstimatorConfig cfg{4.0};
  RngStream rng(78);
  QueryOracle o(JumpObjective(n, n / 2 - 1));
  long correct = 0;
  const int trials = 400;
  for (int rep = 0; rep < trials; ++rep) {
    o.reset();
    int a = 2 + static_cast<int>(rng.below(5));              // level 2..6
    int truth = a + (rng.coin() ? 1 : -1);                   // a_sym of the probe
    Sample y = o.submit(with_weight(rng, n, truth));
    correct += (estimate_sym(o, rng, y, a, cfg) == truth);
  }
  CHECK(static_cast<double>(correct) / trials >= 0.95);
}

TEST_CASE("unary extreme walk: iterations per level scale like n/a") {
  // A misjudged estimate strands the walk until the restart kicks in, so the
  // n/a law is checked over attempts that finished cleanly.
  const int n = 16;
  ExtremeEstimatorConfig cfg{4.0};
  WalkTrace tr;
  int clean = 0;
  const int runs = 100;
  for (uint64_t seed = 1; seed <= static_cast<uint64_t>(runs); ++seed) {
    WeightOracle o(JumpObjective(n, n / 2 - 1),
                   static_cast<uint64_t>(4.0 * std::pow(n, 4.5)));
    o.set_stop_on_optimum(true);
    RngStream rng(seed);
    WalkTrace tr_run;
    bool found = false;
    try {
      found = unary_extreme_attempt_fast(o, rng, cfg, &tr_run);
    } catch (const OptimumFound&) {
      found = true;
    } catch (const BudgetExhausted&) {
    }
    if (!found) continue;
    ++clean;
    for (auto [lvl, cnt] : tr_run.iterations_at_level) tr.iterations_at_level[lvl] += cnt;
  }
  REQUIRE(clean >= 80);
  for (int a = 1; a <= n / 2 - 1; ++a) {
    double mean_iters = static_cast<double>(tr.iterations_at_level[a]) / clean;
    double expect = static_cast<double>(n) / a;
    CHECK(mean_iters >= 0.5 * expect);
    CHECK(mean_iters <= 1.5 * expect + 1.0);
  }
}

TEST_CASE("unary extreme bit-level run (n = 16)") {
  const int n = 16;
  ExtremeEstimatorConfig cfg{4.0};
  int ok = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    QueryOracle o(JumpObjective(n, n / 2 - 1), static_cast<uint64_t>(50.0 * std::pow(n, 4.5)));
    o.set_stop_on_optimum(true);
    RngStream rng(seed);
    ok += unary_extreme_optimize(o, rng, cfg, static_cast<uint64_t>(4.0 * std::pow(n, 4.5))).found;
  }
  CHECK(ok >= 15);
}
