#include "jumplab/extremejump.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drivers.hpp"

namespace jumplab {

SymmetricState symmetric_state(int n, int onemax_value) {
  int d = std::abs(onemax_value - n / 2);
  int sgn = onemax_value == n / 2 ? 0 : (onemax_value > n / 2 ? 1 : -1);
  return {d, sgn, n / 2 - d};
}

bool ternary_extreme_attempt(QueryOracle& oracle, RngStream& rng) {
  const int n = oracle.n();
  Sample x = sample_uniform(oracle, rng);
  while (x.fitness == 0) x = sample_uniform(oracle, rng);
  if (x.fitness == n) return true;

  // z^(i) flips one fresh position per step; y^(i) differs from x in exactly
  // the i-th addressed position, and every position is addressed once.
  std::vector<Sample> ys;
  ys.reserve(static_cast<size_t>(n));
  Sample z_prev = x;
  for (int i = 1; i <= n; ++i) {
    Sample z = sample_flip_where_equal(oracle, rng, z_prev.handle, x.handle, 1);
    ys.push_back(sample_select_bit(oracle, x.handle, z_prev.handle, z.handle));
    z_prev = z;
  }

  // a^(i) flips addressed bits 1 and i in x; fitness 0 means both bits
  // contribute to the weight of x the same way, so bit i joins the fold.
  Sample b = ys[0];
  for (int i = 2; i <= n; ++i) {
    Sample probe = sample_select_bit(oracle, x.handle, ys[0].handle, ys[static_cast<size_t>(i - 1)].handle);
    if (probe.fitness == 0)
      b = sample_select_bit(oracle, b.handle, x.handle, ys[static_cast<size_t>(i - 1)].handle);
  }
  Sample last = sample_complement(oracle, b.handle);
  return b.fitness == n || last.fitness == n || oracle.optimum_found();
}

OptResult ternary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                   uint64_t per_attempt_queries) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { ternary_extreme_attempt(oracle, rng); });
}

Sample movefirst(QueryOracle& oracle, RngStream& rng, Sample x, Sample y, int k) {
  const int n = oracle.n();
  if (k < 1 || k > n / 2 - 1) throw std::invalid_argument("movefirst: k out of range");
  int reps = static_cast<int>(2.0 * std::log2(static_cast<double>(n)));
  for (;;) {
    Sample cand = sample_flip_where_equal(oracle, rng, x.handle, y.handle, 1);
    bool good = true;
    for (int i = 0; i <= reps; ++i) {
      // If d(cand) = k + 1, every such probe has d = 2, hence fitness 0.
      // If d(cand) = k - 1, fitness n/2 shows up with probability >= 1/2.
      Sample u = sample_flip_where_different(oracle, rng, cand.handle, y.handle, k - 1);
      if (u.fitness == n / 2) {
        good = false;
        break;
      }
    }
    if (good) return cand;
  }
}

bool binary_extreme_attempt(QueryOracle& oracle, RngStream& rng) {
  const int n = oracle.n();
  Sample m = sample_uniform(oracle, rng);
  while (m.fitness == 0) m = sample_uniform(oracle, rng);
  if (m.fitness == n) return true;

  // Opposing 1-pair: x and y flip different single bits of m; accepted once
  // ceil(sqrt(n)) + 1 consecutive mix offspring all have fitness n/2.
  int tests = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  Sample x, y;
  for (;;) {
    x = sample_flip_where_equal(oracle, rng, m.handle, m.handle, 1);
    y = sample_flip_where_equal(oracle, rng, m.handle, x.handle, 1);
    bool opposing = true;
    for (int i = 0; i <= tests; ++i) {
      if (sample_mix(oracle, rng, x.handle, y.handle).fitness != n / 2) {
        opposing = false;
        break;
      }
    }
    if (opposing) break;
  }

  for (int k = 1; k <= n / 2 - 1; ++k) {
    Sample xp = movefirst(oracle, rng, x, y, k);
    Sample yp = movefirst(oracle, rng, y, x, k);
    x = xp;
    y = yp;
  }
  // The winning side was queried when it was sampled inside movefirst.
  return x.fitness == n || y.fitness == n || oracle.optimum_found();
}

OptResult binary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                  uint64_t per_attempt_queries) {
  return run_restarting(oracle, per_attempt_queries, [&] { binary_extreme_attempt(oracle, rng); });
}

int estimate_sym(QueryOracle& oracle, RngStream& rng, Sample y, int a,
                 const ExtremeEstimatorConfig& cfg) {
  detail::BitDriver d{oracle, rng};
  return detail::estimate_sym_engine(d, y, a, cfg);
}

int estimate_sym_fast(WeightOracle& oracle, RngStream& rng, int y_weight, int a,
                      const ExtremeEstimatorConfig& cfg) {
  detail::WeightDriver d{oracle, rng, {}};
  detail::WeightPoint p{y_weight, oracle.objective().value_of_weight(y_weight)};
  return detail::estimate_sym_engine(d, p, a, cfg);
}

bool unary_extreme_attempt(QueryOracle& oracle, RngStream& rng, const ExtremeEstimatorConfig& cfg,
                           WalkTrace* trace) {
  detail::BitDriver d{oracle, rng};
  return detail::unary_extreme_engine(d, cfg, trace);
}

bool unary_extreme_attempt_fast(WeightOracle& oracle, RngStream& rng,
                                const ExtremeEstimatorConfig& cfg, WalkTrace* trace) {
  detail::WeightDriver d{oracle, rng, {}};
  return detail::unary_extreme_engine(d, cfg, trace);
}

OptResult unary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                 const ExtremeEstimatorConfig& cfg, uint64_t per_attempt_queries,
                                 WalkTrace* trace) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { unary_extreme_attempt(oracle, rng, cfg, trace); });
}

OptResult unary_extreme_optimize_fast(WeightOracle& oracle, RngStream& rng,
                                      const ExtremeEstimatorConfig& cfg,
                                      uint64_t per_attempt_queries, WalkTrace* trace) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { unary_extreme_attempt_fast(oracle, rng, cfg, trace); });
}

}  // namespace jumplab
