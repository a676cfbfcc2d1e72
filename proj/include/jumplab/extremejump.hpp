#pragma once

#include <cstdint>

#include "jumplab/longjump.hpp"
#include "jumplab/weightsim.hpp"

namespace jumplab {

/// White-box summary of a point relative to the symmetry axis n/2:
/// d = |OneMax - n/2|, sgn = sign(OneMax - n/2), a_sym = min(|x|_1, |x|_0).
struct SymmetricState {
  int d;
  int sgn;
  int a_sym;
};
SymmetricState symmetric_state(int n, int onemax_value);

struct OpposingPair {
  Sample x;
  Sample y;
  int k;
};

/// K scales the sample count N_a = K a^{5/2} n^2 / (n - 2a)^{3/2} of the
/// parity estimator.
struct ExtremeEstimatorConfig {
  double K = 4.0;
};

/// One attempt of the bit-probing ternary optimizer: address every position
/// through a flip-where-equal / select-bit chain, classify each bit against
/// the first one by probing with select-bit, fold, complement. Deterministic
/// success once the initial fitness-n/2 point is found.
bool ternary_extreme_attempt(QueryOracle& oracle, RngStream& rng);
OptResult ternary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                   uint64_t per_attempt_queries);

/// From an opposing k-pair (x, y), produce a Hamming neighbor x' of x with
/// d(x') = k + 1 (correct with probability >= 1 - 2 log2(n) / n^2).
Sample movefirst(QueryOracle& oracle, RngStream& rng, Sample x, Sample y, int k);

/// One attempt of the opposing-pair climber (mix-validated pair start, then
/// movefirst on both sides for k = 1 .. n/2 - 1).
bool binary_extreme_attempt(QueryOracle& oracle, RngStream& rng);
OptResult binary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                  uint64_t per_attempt_queries);

/// Decides whether a_sym(y) is a - 1 or a + 1 (caller guarantees one of the
/// two). Boundary a = n/2 - 1 reads the fitness directly; boundary a = 1
/// probes y and its complement for the optimum. Otherwise counts fitness-n/2
/// offspring among N = max(N_{a-1}, N_{a+1}) samples at flip distance n/2
/// (candidates even) or n/2 - 1 (candidates odd) and thresholds the count at
/// N (p_{a+1} + p_{a-1}) / 2 with exact p values.
int estimate_sym(QueryOracle& oracle, RngStream& rng, Sample y, int a,
                 const ExtremeEstimatorConfig& cfg);

/// One attempt of the unary threshold walk (estimate-guided descent of
/// a_sym from n/2 - 1 to 0, then complement).
bool unary_extreme_attempt(QueryOracle& oracle, RngStream& rng, const ExtremeEstimatorConfig& cfg,
                           WalkTrace* trace = nullptr);
OptResult unary_extreme_optimize(QueryOracle& oracle, RngStream& rng,
                                 const ExtremeEstimatorConfig& cfg, uint64_t per_attempt_queries,
                                 WalkTrace* trace = nullptr);

/// Weight-space twins (identical query statistics; used where the fast path
/// is allowed).
int estimate_sym_fast(WeightOracle& oracle, RngStream& rng, int y_weight, int a,
                      const ExtremeEstimatorConfig& cfg);
bool unary_extreme_attempt_fast(WeightOracle& oracle, RngStream& rng,
                                const ExtremeEstimatorConfig& cfg, WalkTrace* trace = nullptr);
OptResult unary_extreme_optimize_fast(WeightOracle& oracle, RngStream& rng,
                                      const ExtremeEstimatorConfig& cfg,
                                      uint64_t per_attempt_queries, WalkTrace* trace = nullptr);

}  // namespace jumplab
