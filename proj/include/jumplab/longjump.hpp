#pragma once

#include <cstdint>
#include <unordered_map>

#include "jumplab/onemax.hpp"
#include "jumplab/weightsim.hpp"

namespace jumplab {

/// Per-level counters for instrumented runs of the estimator-driven walks.
struct WalkTrace {
  std::unordered_map<int, long> iterations_at_level;
  std::unordered_map<int, long> departures_from_level;
  long estimator_calls = 0;
  long batch_restarts = 0;
};

/// Parameters of the long-jump estimator. eps_n is the largest even integer
/// with ell <= n/2 - eps_n, so each estimator sample flips (n - eps_n)/2 bits
/// and lands mid-band: a visible offspring fitness averages
/// (n + eps_n)/2 - eps*a when the parent sits at distance a from the optimum.
struct LongJumpConfig {
  int n = 0;
  int ell = 0;
  int eps_n = 0;        // even, >= 2
  int flips = 0;        // (n - eps_n) / 2
  int offset = 0;       // (n + eps_n) / 2 = n - eps_n/2 ... accumulator offset
  double eps = 0.0;     // eps_n / n
  double K_T = 24.0;    // sample-count constant of the distance estimator
  int max_batch_restarts = 4;

  static LongJumpConfig from(int n, int ell, double K_T = 24.0);
  int block_size() const { return n / 2 - ell; }
};

/// Rounded distance estimate from batch statistics: floor(-s/(T*eps) + 1/2).
long estimate_round(long long s, long T, double eps);

/// Sample count the distance estimator uses at believed distance alpha:
/// ceil(K_T * (2 alpha + 1) * ln(6n / (2 alpha + 1)) / eps^2).
long p_estimator_samples(int n, long alpha, double eps, double K_T);

/// Hamming-distance-to-optimum estimator: T samples at flip distance
/// cfg.flips; a zero-fitness sample restarts the batch (up to
/// cfg.max_batch_restarts times, after which zero samples are skipped so the
/// call terminates even in regimes where clean batches are vanishingly
/// rare). Returns floor(-s/(T eps) + 1/2).
long estimate_distance(QueryOracle& oracle, RngStream& rng, Sample x, long T,
                       const LongJumpConfig& cfg, WalkTrace* trace = nullptr);

/// Contract-carrying distance estimator: estimate_distance with the adaptive
/// sample count above, so that P(estimate != a) <= a/16n whenever the
/// believed distance alpha lies in [a/2, 3a/2].
struct PEstimator {
  LongJumpConfig cfg;
  double p_factor = 1.0;  // multiplies the sample count

  long estimate(QueryOracle& oracle, RngStream& rng, Sample x, long alpha,
                WalkTrace* trace = nullptr) const;
  long samples_for(long alpha) const;
};

PEstimator make_p_estimator(const LongJumpConfig& cfg, double p_factor = 1.0);

/// One attempt of the unary random-walk optimizer (estimator-guided
/// single-bit hill climb; candidate accepted when its estimated distance is
/// strictly smaller).
bool unary_longjump_attempt(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                            WalkTrace* trace = nullptr);
OptResult unary_longjump_optimize(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                                  uint64_t per_attempt_queries, WalkTrace* trace = nullptr);

/// Weight-space twins of the unary optimizer (identical distribution of
/// query counts; no bit strings are materialized).
bool unary_longjump_attempt_fast(WeightOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                                 WalkTrace* trace = nullptr);
OptResult unary_longjump_optimize_fast(WeightOracle& oracle, RngStream& rng,
                                       const LongJumpConfig& cfg, uint64_t per_attempt_queries,
                                       WalkTrace* trace = nullptr);
long estimate_distance_fast(WeightOracle& oracle, RngStream& rng, int parent_weight, long T,
                            const LongJumpConfig& cfg, WalkTrace* trace = nullptr);

/// One attempt of the blockwise ternary optimizer: find a reference point of
/// fitness n/2, split the positions into blocks of n/2 - ell via
/// flip-where-equal / select-bit chains, optimize each block as OneMax on
/// the subcube, fold the blocks with copy-where-differs, verify.
bool ternary_longjump_attempt(QueryOracle& oracle, RngStream& rng, const LongJumpConfig& cfg,
                              OneMaxSolver& solver);
OptResult ternary_longjump_optimize(QueryOracle& oracle, RngStream& rng,
                                    const LongJumpConfig& cfg, OneMaxSolver& solver,
                                    uint64_t per_attempt_queries);

}  // namespace jumplab
