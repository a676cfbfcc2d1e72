#include "jumplab/shortjump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumplab {

ShortJumpConfig ShortJumpConfig::from(int n, int ell, double c) {
  ShortJumpConfig cfg;
  cfg.c = c;
  if (n < 2) throw std::invalid_argument("ShortJumpConfig: n too small");
  double eps = 0.5;
  if (ell >= 2) eps = 0.5 - std::log(static_cast<double>(ell)) / std::log(static_cast<double>(n));
  cfg.eps = std::clamp(eps, 0.05, 0.5);
  cfg.t = std::clamp(static_cast<int>(std::ceil(cfg.c / (2.0 * cfg.eps) - 1e-9)), 1, 64);
  return cfg;
}

long simulate_onemax(QueryOracle& oracle, RngStream& rng, Sample x, int ell,
                     const ShortJumpConfig& cfg) {
  if (x.fitness != 0) return x.fitness;
  const int n = oracle.n();
  long max_m = 0;
  long min_nonzero = -1;
  for (int i = 0; i < cfg.t; ++i) {
    long f = sample_flip_k(oracle, rng, x.handle, ell).fitness;
    max_m = std::max(max_m, f);
    if (f != 0 && (min_nonzero < 0 || f < min_nonzero)) min_nonzero = f;
  }
  if (2 * max_m < n) return max_m - ell;
  return min_nonzero + ell;
}

int learn_ell(QueryOracle& oracle, RngStream& rng, Sample zero_point, int samples_per_radius) {
  if (zero_point.fitness != 0) throw std::invalid_argument("learn_ell: point has visible fitness");
  const int n = oracle.n();
  int per_radius = std::max(4, samples_per_radius);
  for (int i = 1; i <= n; ++i) {
    for (int s = 0; s < per_radius; ++s) {
      long v = sample_flip_k(oracle, rng, zero_point.handle, i).fitness;
      if (v == 0 || v == n) continue;  // optimal neighbors carry no plateau width info
      return 2 * v < n ? static_cast<int>(v) - 1 : n - static_cast<int>(v) - 1;
    }
  }
  throw std::runtime_error("learn_ell: no visible neighbor found");
}

namespace {

// Presents the jump oracle as a OneMax view by routing every evaluation
// through simulate_onemax; learns ell lazily when configured to.
class SimulatedOneMaxView final : public OneMaxView {
 public:
  SimulatedOneMaxView(QueryOracle& o, RngStream& rng, const ShortJumpConfig& cfg)
      : o_(o), rng_(rng), cfg_(cfg), start_(o.query_count()) {
    if (cfg.known_ell) ell_ = o.objective().ell;
  }

  int dimension() const override { return o_.n(); }
  uint64_t queries_used() const override { return o_.query_count() - start_; }

  ViewSample sample_uniform(RngStream& rng) override { return evaluate(sample_uniform_raw(rng)); }
  ViewSample sample_flip(RngStream& rng, SearchPointHandle parent, int k) override {
    return evaluate(sample_flip_k(o_, rng, parent, k));
  }

 private:
  Sample sample_uniform_raw(RngStream& rng) { return jumplab::sample_uniform(o_, rng); }

  ViewSample evaluate(Sample s) {
    if (s.fitness != 0) return {s.handle, s.fitness};
    if (!ell_) ell_ = learn_ell(o_, rng_, s, cfg_.t);
    return {s.handle, simulate_onemax(o_, rng_, s, *ell_, cfg_)};
  }

  QueryOracle& o_;
  RngStream& rng_;
  ShortJumpConfig cfg_;
  uint64_t start_;
  std::optional<int> ell_;
};

}  // namespace

bool shortjump_attempt(QueryOracle& oracle, RngStream& rng, const ShortJumpConfig& cfg,
                       OneMaxSolver& solver, uint64_t solver_budget) {
  SimulatedOneMaxView view(oracle, rng, cfg);
  solver.optimize(view, solver_budget, rng);
  return oracle.optimum_found();
}

OptResult shortjump_optimize(QueryOracle& oracle, RngStream& rng, const ShortJumpConfig& cfg,
                             OneMaxSolver& solver, uint64_t per_attempt_queries) {
  return run_restarting(oracle, per_attempt_queries, [&] {
    shortjump_attempt(oracle, rng, cfg, solver, per_attempt_queries);
  });
}

}  // namespace jumplab
