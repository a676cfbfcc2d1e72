#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "jumplab/stats.hpp"
#include "jumplab/variation.hpp"

using namespace jumplab;

TEST_CASE("flip_k endpoints and distance law") {
  RngStream rng(11);
  BitString x = BitString::parse("1101001010");
  CHECK(op_flip_k(rng, x, 0) == x);
  CHECK(op_flip_k(rng, x, 10) == x.complemented());
  for (int k = 0; k <= 10; ++k)
    for (int i = 0; i < 50; ++i) REQUIRE(distance(op_flip_k(rng, x, k), x) == k);
  CHECK_THROWS_AS(op_flip_k(rng, x, 11), std::invalid_argument);
}

TEST_CASE("flip_k picks position pairs uniformly (n=6, k=2)") {
  RngStream rng(12);
  BitString x(6);
  const int trials = 100000;
  std::map<uint64_t, long> counts;
  for (int i = 0; i < trials; ++i) ++counts[op_flip_k(rng, x, 2).words()[0]];
  CHECK(counts.size() == 15);
  double expect = trials / 15.0;
  double sigma = std::sqrt(trials * (1.0 / 15) * (14.0 / 15));
  for (auto [cell, c] : counts) CHECK(std::fabs(c - expect) <= 3 * sigma);
}

TEST_CASE("flip_k offspring weight follows the hypergeometric law") {
  // new weight = w + k - 2z with z ~ Hypergeom(n, w, k); two-sample chi-square
  // against stats::hypergeom_sample
  const int n = 20, w = 12, k = 7, trials = 100000;
  RngStream r1(13), r2(14);
  BitString x(n);
  for (int i = 0; i < w; ++i) x.flip(i);
  std::map<int, long> h1, h2;
  for (int i = 0; i < trials; ++i) h1[weight(op_flip_k(r1, x, k))]++;
  for (int i = 0; i < trials; ++i) h2[w + k - 2 * hypergeom_sample(r2, n, w, k)]++;
  double stat = 0;
  int df = -1;
  for (int ww = 0; ww <= n; ++ww) {
    double a = static_cast<double>(h1.count(ww) ? h1[ww] : 0);
    double b = static_cast<double>(h2.count(ww) ? h2[ww] : 0);
    if (a + b == 0) continue;
    stat += (a - b) * (a - b) / (a + b);
    ++df;
  }
  CHECK(chi2_survival(stat, df) >= 1e-3);
}

TEST_CASE("flip_where_equal") {
  RngStream rng(15);
  BitString x = BitString::parse("11");
  BitString y = BitString::parse("10");
  CHECK(op_flip_where_equal(rng, x, y, 1) == BitString::parse("01"));  // only position 1 agrees
  // x = complement(y): nothing agrees, nothing flips
  BitString z = BitString::parse("0101");
  CHECK(op_flip_where_equal(rng, z, z.complemented(), 3) == z);
  // x = y behaves like flip_k
  BitString w = BitString::parse("110100");
  for (int i = 0; i < 50; ++i) REQUIRE(distance(op_flip_where_equal(rng, w, w, 2), w) == 2);
  // fewer than k agreeing: all agreeing positions flip
  BitString a = BitString::parse("1100");
  BitString b = BitString::parse("1010");  // agree at positions 0 and 3
  CHECK(op_flip_where_equal(rng, a, b, 9) == BitString::parse("0101"));
}

TEST_CASE("flip_where_different") {
  RngStream rng(16);
  CHECK(op_flip_where_different(rng, BitString::parse("10"), BitString::parse("01"), 2) ==
        BitString::parse("01"));
  BitString x = BitString::parse("11010010");
  BitString y = x;
  y.flip(2);
  y.flip(5);
  y.flip(6);
  for (int i = 0; i < 50; ++i) {
    REQUIRE(distance(op_flip_where_different(rng, x, y, 2), x) == 2);
  }
  // fewer disagreements than k: uniform fallback, mean weight n/2
  double total = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) total += weight(op_flip_where_different(rng, x, x, 1));
  double sigma = std::sqrt(8 * 0.25 / trials);
  CHECK(std::fabs(total / trials - 4.0) <= 5 * sigma);
}

TEST_CASE("select_bit") {
  RngStream rng(17);
  BitString x = BitString::parse("0000");
  BitString y = BitString::parse("0011");
  BitString z = BitString::parse("0001");
  CHECK(op_select_bit(x, y, y) == x);
  CHECK(op_select_bit(x, y, z) == BitString::parse("0010"));
  // equals x ^ y ^ z, exhaustively at n <= 6 and sampled at n = 8
  for (int n = 1; n <= 6; ++n) {
    for (uint64_t xm = 0; xm < (uint64_t{1} << n); ++xm)
      for (uint64_t ym = 0; ym < (uint64_t{1} << n); ++ym)
        for (uint64_t zm = 0; zm < (uint64_t{1} << n); ++zm) {
          BitString bx(n), by(n), bz(n);
          bx.words()[0] = xm;
          by.words()[0] = ym;
          bz.words()[0] = zm;
          REQUIRE(op_select_bit(bx, by, bz) == xor_combine(bx, xor_combine(by, bz)));
        }
  }
  for (int i = 0; i < 100000; ++i) {
    BitString bx = random_bits(rng, 8), by = random_bits(rng, 8), bz = random_bits(rng, 8);
    REQUIRE(op_select_bit(bx, by, bz) == xor_combine(bx, xor_combine(by, bz)));
  }
}

TEST_CASE("copy_where_differs") {
  BitString x = BitString::parse("1111");
  BitString y = BitString::parse("0011");
  CHECK(op_copy_where_differs(x, y, y) == x);
  CHECK(op_copy_where_differs(x, y, x) == y);
  CHECK(op_copy_where_differs(x, y, BitString::parse("0000")) == BitString::parse("1111"));
  CHECK(op_copy_where_differs(x, y, BitString::parse("1111")) == BitString::parse("0011"));
}

TEST_CASE("complement") {
  BitString x = BitString::parse("0000");
  CHECK(op_complement(x) == BitString::parse("1111"));
  RngStream rng(18);
  for (int i = 0; i < 50; ++i) {
    BitString r = random_bits(rng, 130);
    CHECK(op_complement(op_complement(r)) == r);
    CHECK(weight(op_complement(r)) == 130 - weight(r));
  }
}

TEST_CASE("mix at distance two returns both inheritances with equal probability") {
  RngStream rng(19);
  BitString x = BitString::parse("10");
  BitString y = BitString::parse("01");
  long ones = 0, zeros = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    BitString o = op_mix(rng, x, y);
    if (o == BitString::parse("11"))
      ++ones;
    else if (o == BitString::parse("00"))
      ++zeros;
    else
      REQUIRE(false);
  }
  double sigma = std::sqrt(trials * 0.25);
  CHECK(std::fabs(ones - trials / 2.0) <= 3 * sigma);
  CHECK(zeros + ones == trials);

  // when the two differing bits hold the same value in x, every outcome
  // gains one bit and loses one, so both land at (w(x)+w(y))/2
  BitString a = BitString::parse("110010");
  BitString b = a;
  b.flip(0);  // 1 -> 0
  b.flip(1);  // 1 -> 0
  for (int i = 0; i < 200; ++i)
    REQUIRE(weight(op_mix(rng, a, b)) == (weight(a) + weight(b)) / 2);

  // distance 4: uniform fallback
  BitString far = a;
  far.flip(0);
  far.flip(1);
  far.flip(2);
  far.flip(3);
  double total = 0;
  for (int i = 0; i < 20000; ++i) total += weight(op_mix(rng, a, far));
  CHECK(std::fabs(total / 20000 - 3.0) <= 5 * std::sqrt(6 * 0.25 / 20000));
}

TEST_CASE("uniform_sample distribution at n = 4") {
  RngStream rng(20);
  const int trials = 100000;
  std::array<long, 16> counts{};
  for (int i = 0; i < trials; ++i) ++counts[op_uniform(rng, 4).words()[0]];
  double expect = trials / 16.0;
  double sigma = std::sqrt(trials * (1.0 / 16) * (15.0 / 16));
  for (long c : counts) CHECK(std::fabs(c - expect) <= 3 * sigma);

  // exact central mass at n = 8: P(weight = 4) = 70/256
  long mid = 0;
  for (int i = 0; i < trials; ++i) mid += weight(op_uniform(rng, 8)) == 4;
  double p = 70.0 / 256.0;
  CHECK(std::fabs(mid - trials * p) <= 3 * std::sqrt(trials * p * (1 - p)));
}

TEST_CASE("deterministic operators ignore the rng") {
  RngStream r1(1), r2(999);
  BitString x = BitString::parse("110100");
  BitString y = BitString::parse("101100");
  BitString z = BitString::parse("010011");
  CHECK(op_select_bit(x, y, z) == op_select_bit(x, y, z));
  CHECK(op_copy_where_differs(x, y, z) == op_copy_where_differs(x, y, z));
  CHECK(op_complement(x) == op_complement(x));
}

TEST_CASE("oracle samplers submit exactly one query per application") {
  QueryOracle o(JumpObjective(10, 2));
  RngStream rng(21);
  Sample a = sample_uniform(o, rng);
  CHECK(o.query_count() == 1);
  Sample b = sample_flip_k(o, rng, a.handle, 3);
  CHECK(o.query_count() == 2);
  CHECK(distance(testing::reveal(o, a.handle), testing::reveal(o, b.handle)) == 3);
  Sample c = sample_flip_where_equal(o, rng, a.handle, b.handle, 2);
  Sample d = sample_flip_where_different(o, rng, a.handle, b.handle, 1);
  Sample e = sample_select_bit(o, a.handle, b.handle, c.handle);
  Sample f = sample_copy_where_differs(o, a.handle, b.handle, c.handle);
  Sample g = sample_mix(o, rng, a.handle, d.handle);
  Sample h = sample_complement(o, e.handle);
  CHECK(o.query_count() == 8);
  CHECK(testing::reveal(o, h.handle) ==
        testing::reveal(o, e.handle).complemented());
  CHECK(f.fitness == o.objective().value(testing::reveal(o, f.handle)));
  CHECK(g.handle.id == 6);
}
