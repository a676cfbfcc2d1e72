#pragma once

#include <optional>

#include "jumplab/onemax.hpp"

namespace jumplab {

/// Tuning for the constant-query OneMax simulation on short jump functions.
/// t = ceil(c / (2 eps)) samples are drawn per blanked evaluation; the
/// simulation errs with probability at most (ell^2 / (n - ell))^t.
struct ShortJumpConfig {
  double eps = 0.25;
  double c = 4.0;
  int t = 8;
  bool known_ell = false;  // when false, ell is learned at the first zero fitness

  /// eps is the largest value with ell <= n^(1/2 - eps); t follows from c.
  static ShortJumpConfig from(int n, int ell, double c = 4.0);
};

/// OneMax value of the stored point behind `x`, computed through jump
/// queries only (certain when the fitness is visible, otherwise inferred
/// from t samples at flip distance ell). May be wrong with small
/// probability; never reads bits.
long simulate_onemax(QueryOracle& oracle, RngStream& rng, Sample x, int ell,
                     const ShortJumpConfig& cfg);

/// Infers ell from a fitness-0 point: samples i-neighbors for growing i
/// until a visible non-optimal fitness v appears. A point on the heavy side
/// has maximal non-optimal fitness n - ell - 1; a point below the plateau
/// first sees ell + 1. Returns v < n/2 ? v - 1 : n - v - 1.
int learn_ell(QueryOracle& oracle, RngStream& rng, Sample zero_point, int samples_per_radius);

/// One attempt of the wrapper: run `solver` as if on OneMax, with every
/// fitness evaluation going through simulate_onemax. Returns true when the
/// optimum was queried.
bool shortjump_attempt(QueryOracle& oracle, RngStream& rng, const ShortJumpConfig& cfg,
                       OneMaxSolver& solver, uint64_t solver_budget);

/// Restart-wrapped optimizer (fresh attempt whenever the per-attempt query
/// cap is hit or the solver stalls).
OptResult shortjump_optimize(QueryOracle& oracle, RngStream& rng, const ShortJumpConfig& cfg,
                             OneMaxSolver& solver, uint64_t per_attempt_queries);

}  // namespace jumplab
