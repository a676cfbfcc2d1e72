#pragma once

// Internal: the unary algorithms (distance estimator walk, parity-threshold
// walk) written once against a driver concept, instantiated for the
// bit-level oracle and for the weight-space twin. Not installed.

#include <bit>
#include <cmath>
#include <unordered_map>

#include "jumplab/extremejump.hpp"
#include "jumplab/longjump.hpp"
#include "jumplab/stats.hpp"
#include "jumplab/variation.hpp"
#include "jumplab/weightsim.hpp"

namespace jumplab::detail {

struct BitDriver {
  QueryOracle& o;
  RngStream& rng;
  using P = Sample;

  int n() const { return o.n(); }
  long fit(const Sample& p) const { return p.fitness; }
  Sample uniform() { return sample_uniform(o, rng); }
  Sample flip(const Sample& p, int k) { return sample_flip_k(o, rng, p.handle, k); }
  Sample complement(const Sample& p) { return sample_complement(o, p.handle); }
  bool done() const { return o.optimum_found(); }
  int true_dist(const Sample&) const { return -1; }  // black box
};

struct WeightPoint {
  int w;
  long fitness;
};

struct WeightDriver {
  WeightOracle& o;
  RngStream& rng;
  std::unordered_map<uint32_t, HypergeomTable> tables;
  using P = WeightPoint;

  int n() const { return o.n(); }
  long fit(const WeightPoint& p) const { return p.fitness; }
  WeightPoint make(int w) { return {w, o.submit_weight(w)}; }

  WeightPoint uniform() {
    int rem = o.n();
    int w = 0;
    while (rem >= 64) {
      w += std::popcount(rng.next());
      rem -= 64;
    }
    if (rem > 0) w += std::popcount(rng.next() & ((uint64_t{1} << rem) - 1));
    return make(w);
  }

  WeightPoint flip(const WeightPoint& p, int k) {
    if (k == 1) {
      bool down = rng.below(static_cast<uint64_t>(o.n())) < static_cast<uint64_t>(p.w);
      return make(p.w + (down ? -1 : 1));
    }
    uint32_t key = (static_cast<uint32_t>(p.w) << 16) | static_cast<uint32_t>(k);
    auto it = tables.find(key);
    if (it == tables.end()) it = tables.emplace(key, HypergeomTable(o.n(), p.w, k)).first;
    int z = it->second.sample(rng);
    return make(p.w + k - 2 * z);
  }

  WeightPoint complement(const WeightPoint& p) { return make(o.n() - p.w); }
  bool done() const { return o.optimum_found(); }
  int true_dist(const WeightPoint& p) const { return o.n() - p.w; }
};

// ---- distance estimator and unary long-jump walk ----

template <class D>
long estimate_distance_engine(D& d, const typename D::P& x, long T, const LongJumpConfig& cfg,
                              WalkTrace* trace) {
  if (trace) ++trace->estimator_calls;
  for (int round = 0;; ++round) {
    long long s = 0;
    long got = 0;
    bool aborted = false;
    while (got < T) {
      long f = d.fit(d.flip(x, cfg.flips));
      if (f == 0) {
        if (round < cfg.max_batch_restarts) {
          aborted = true;
          if (trace) ++trace->batch_restarts;
          break;
        }
        continue;  // restart cap reached: skip blanked samples, keep counting queries
      }
      s += f - cfg.offset;
      ++got;
    }
    if (!aborted) return estimate_round(s, T, cfg.eps);
  }
}

template <class D>
long p_estimate_engine(D& d, const typename D::P& x, long alpha, const LongJumpConfig& cfg,
                       double p_factor, WalkTrace* trace) {
  long T = static_cast<long>(
      std::ceil(p_factor * static_cast<double>(p_estimator_samples(d.n(), alpha, cfg.eps, cfg.K_T))));
  return estimate_distance_engine(d, x, std::max<long>(T, 1), cfg, trace);
}

template <class D>
bool unary_longjump_engine(D& d, const LongJumpConfig& cfg, WalkTrace* trace) {
  const int n = d.n();
  auto x = d.uniform();
  while (d.fit(x) == 0) x = d.uniform();
  if (d.fit(x) == n) return true;
  long alpha = n - d.fit(x);
  while (d.fit(x) != n) {
    if (d.done()) return true;
    if (trace) ++trace->iterations_at_level[d.true_dist(x)];
    auto cand = d.flip(x, 1);
    if (d.fit(cand) == n) return true;
    long est_cand = p_estimate_engine(d, cand, alpha, cfg, 1.0, trace);
    long est_cur = p_estimate_engine(d, x, alpha, cfg, 1.0, trace);
    if (est_cand < est_cur) {
      if (trace) ++trace->departures_from_level[d.true_dist(x)];
      x = cand;
      alpha = est_cand;
    }
  }
  return true;
}

// ---- parity estimator and unary extreme walk ----

// Y < N (p_{a+1} + p_{a-1}) / 2, exact for n <= 128, log-space beyond. The
// two p values (same parity) may sum above 1, so compare cross products.
inline bool below_parity_threshold(long Y, long N, int n, int a) {
  if (n <= 128) {
    ExactProb plus = (a % 2 == 0) ? p_flip_odd(n, a + 1) : p_flip_even(n, a + 1);
    ExactProb minus = (a % 2 == 0) ? p_flip_odd(n, a - 1) : p_flip_even(n, a - 1);
    // 2 Y d1 d2 < N (n1 d2 + n2 d1)
    BigUint lhs = BigUint(static_cast<uint64_t>(2 * Y)) * (plus.den * minus.den);
    BigUint rhs =
        BigUint(static_cast<uint64_t>(N)) * (plus.num * minus.den + minus.num * plus.den);
    return lhs < rhs;
  }
  double psum = std::exp(p_flip_log(n, a + 1)) + std::exp(p_flip_log(n, a - 1));
  return static_cast<double>(Y) < static_cast<double>(N) * psum / 2.0;
}

template <class D>
int estimate_sym_engine(D& d, const typename D::P& y, int a, const ExtremeEstimatorConfig& cfg) {
  const int n = d.n();
  const int half = n / 2;
  if (a < 1 || a > half - 1) throw std::invalid_argument("estimate_sym: a out of range");
  if (a == half - 1) return d.fit(y) == half ? half : half - 2;
  if (a == 1) {
    if (d.fit(y) == n) return 0;
    if (d.fit(d.complement(y)) == n) return 0;
    return 2;
  }
  long N = std::max(sample_size_na(n, a - 1, cfg.K), sample_size_na(n, a + 1, cfg.K));
  // candidates a-1, a+1 share parity; fitness n/2 is reachable only when the
  // flip count matches it: n/2 flips for even candidates, n/2 - 1 for odd.
  int flips = (a % 2 == 1) ? half : half - 1;
  long Y = 0;
  for (long i = 0; i < N; ++i) {
    if (d.fit(d.flip(y, flips)) == half) ++Y;
  }
  return below_parity_threshold(Y, N, n, a) ? a + 1 : a - 1;
}

template <class D>
bool unary_extreme_engine(D& d, const ExtremeEstimatorConfig& cfg, WalkTrace* trace) {
  const int n = d.n();
  auto m = d.uniform();
  while (d.fit(m) == 0) m = d.uniform();
  if (d.fit(m) == n) return true;
  auto x = d.flip(m, 1);
  for (int a = n / 2 - 1; a >= 1; --a) {
    for (;;) {
      if (d.done()) return true;
      if (trace) ++trace->iterations_at_level[a];
      auto y = d.flip(x, 1);
      if (d.fit(y) == n) return true;
      if (estimate_sym_engine(d, y, a, cfg) == a - 1) {
        if (trace) ++trace->departures_from_level[a];
        x = y;
        break;
      }
    }
  }
  auto last = d.complement(x);
  return d.fit(last) == n || d.done();
}

}  // namespace jumplab::detail
