#include "jumplab/longjump.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drivers.hpp"

namespace jumplab {

LongJumpConfig LongJumpConfig::from(int n, int ell, double K_T) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("LongJumpConfig: n must be even, >= 4");
  if (ell < 1 || ell > n / 2 - 2)
    throw std::invalid_argument("LongJumpConfig: need 1 <= ell <= n/2 - 2");
  LongJumpConfig cfg;
  cfg.n = n;
  cfg.ell = ell;
  // largest even eps_n with ell <= n/2 - eps_n, so estimator flips stay
  // centered between the two blanked bands
  cfg.eps_n = 2 * ((n / 2 - ell) / 2);
  if (cfg.eps_n < 2) throw std::invalid_argument("LongJumpConfig: plateau too wide for estimator");
  cfg.flips = (n - cfg.eps_n) / 2;
  cfg.offset = (n + cfg.eps_n) / 2;
  cfg.eps = static_cast<double>(cfg.eps_n) / n;
  cfg.K_T = K_T;
  return cfg;
}

long estimate_round(long long s, long T, double eps) {
  double a_hat = -static_cast<double>(s) / (static_cast<double>(T) * eps);
  return static_cast<long>(std::floor(a_hat + 0.5));
}

long p_estimator_samples(int n, long alpha, double eps, double K_T) {
  if (alpha < 0) alpha = 0;
  double m = 2.0 * static_cast<double>(alpha) + 1.0;
  return static_cast<long>(std::ceil(K_T * m * std::log(6.0 * n / m) / (eps * eps)));
}

long estimate_distance(QueryOracle& oracle, RngStream& rng, Sample x, long T,
                       const LongJumpConfig& cfg, WalkTrace* trace) {
  detail::BitDriver d{oracle, rng};
  return detail::estimate_distance_engine(d, x, T, cfg, trace);
}

long estimate_distance_fast(WeightOracle& oracle, RngStream& rng, int parent_weight, long T,
                            const LongJumpConfig& cfg, WalkTrace* trace) {
  detail::WeightDriver d{oracle, rng, {}};
  detail::WeightPoint p{parent_weight, oracle.objective().value_of_weight(parent_weight)};
  return detail::estimate_distance_engine(d, p, T, cfg, trace);
}

long PEstimator::samples_for(long alpha) const {
  return static_cast<long>(std::ceil(
      p_factor * static_cast<double>(p_estimator_samples(cfg.n, alpha, cfg.eps, cfg.K_T))));
}

long PEstimator::estimate(QueryOracle& oracle, RngStream& rng, Sample x, long alpha,
                          WalkTrace* trace) const {
  detail::BitDriver d{oracle, rng};
  return detail::p_estimate_engine(d, x, alpha, cfg, p_factor, trace);
}

PEstimator make_p_estimator(const LongJumpConfig& cfg, double p_factor) {
  return PEstimator{cfg, p_factor};
}

bool unary_longjump_attempt(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                            WalkTrace* trace) {
  detail::BitDriver d{oracle, rng};
  return detail::unary_longjump_engine(d, cfg, trace);
}

bool unary_longjump_attempt_fast(WeightOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                                 WalkTrace* trace) {
  detail::WeightDriver d{oracle, rng, {}};
  return detail::unary_longjump_engine(d, cfg, trace);
}

OptResult unary_longjump_optimize(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                                  uint64_t per_attempt_queries, WalkTrace* trace) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { unary_longjump_attempt(oracle, rng, cfg, trace); });
}

OptResult unary_longjump_optimize_fast(WeightOracle& oracle, RngStream& rng,
                                       const LongJumpConfig& cfg, uint64_t per_attempt_queries,
                                       WalkTrace* trace) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { unary_longjump_attempt_fast(oracle, rng, cfg, trace); });
}

bool ternary_longjump_attempt(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                              OneMaxSolver& solver) {
  const int n = oracle.n();
  const int a_block = cfg.block_size();
  if (a_block < 1) throw std::invalid_argument("ternary_longjump: block size must be >= 1");

  Sample x = sample_uniform(oracle, rng);
  while (x.fitness != n / 2) {
    if (x.fitness == n) return true;
    x = sample_uniform(oracle, rng);
  }

  // Address disjoint blocks of positions: z walks away from x by a_block new
  // positions per step, y_i isolates the i-th block.
  int blocks = (n + a_block - 1) / a_block;
  std::vector<Sample> ys;
  ys.reserve(static_cast<size_t>(blocks));
  Sample z_prev = x;
  for (int i = 1; i <= blocks; ++i) {
    Sample z = sample_flip_where_equal(oracle, rng, z_prev.handle, x.handle, a_block);
    ys.push_back(sample_select_bit(oracle, x.handle, z_prev.handle, z.handle));
    z_prev = z;
  }

  Sample folded = x;
  for (int i = 0; i < blocks; ++i) {
    int a_i = (i + 1 < blocks) ? a_block : n - (blocks - 1) * a_block;
    if (ys[static_cast<size_t>(i)].fitness == 0) return false;  // monochromatic block edge case
    auto budget = static_cast<uint64_t>(std::ceil(10.0 * a_i * std::log(a_i + 2.0)));
    Sample best =
        simulate_on_subcube(oracle, rng, x, ys[static_cast<size_t>(i)], a_i, solver, budget);
    folded = sample_copy_where_differs(oracle, folded.handle, best.handle, x.handle);
  }
  return folded.fitness == n;
}

OptResult ternary_longjump_optimize(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                                    OneMaxSolver& solver, uint64_t per_attempt_queries) {
  return run_restarting(oracle, per_attempt_queries,
                        [&] { ternary_longjump_attempt(oracle, rng, cfg, solver); });
}

}  // namespace jumplab
