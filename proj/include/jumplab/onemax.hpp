#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "jumplab/objective.hpp"
#include "jumplab/variation.hpp"

namespace jumplab {

/// A sample as seen by a OneMax solver: an opaque handle plus the fitness
/// value the view reports for it. Value -1 marks a point whose value the
/// view could not determine (never accepted, never optimal).
struct ViewSample {
  SearchPointHandle handle;
  long value = -1;
};

/// Fitness view a OneMax solver optimizes against. Implementations decide
/// what a query costs and how the reported value is produced; solvers only
/// see handles and values in [0 .. dimension()].
class OneMaxView {
 public:
  virtual ~OneMaxView() = default;
  virtual int dimension() const = 0;
  virtual ViewSample sample_uniform(RngStream& rng) = 0;
  virtual ViewSample sample_flip(RngStream& rng, SearchPointHandle parent, int k) = 0;
  virtual uint64_t queries_used() const = 0;
};

/// Pluggable OneMax optimizer restricted to unbiased operations on the view.
class OneMaxSolver {
 public:
  virtual ~OneMaxSolver() = default;
  virtual ViewSample optimize(OneMaxView& view, uint64_t query_budget, RngStream& rng) = 0;
  virtual std::string_view name() const = 0;
  virtual std::string_view nominal_complexity() const = 0;
  virtual int arity() const = 0;
};

/// Randomized local search: uniform start, single-bit flips, accept when the
/// value does not decrease, stop at value = dimension or budget.
class RlsSolver final : public OneMaxSolver {
 public:
  ViewSample optimize(OneMaxView& view, uint64_t query_budget, RngStream& rng) override;
  std::string_view name() const override { return "rls"; }
  std::string_view nominal_complexity() const override { return "O(n log n)"; }
  int arity() const override { return 1; }
};

/// Solver lookup by name ("rls" is the only built-in).
std::unique_ptr<OneMaxSolver> make_solver(std::string_view name);

/// Runs `solver` on the sub-hypercube [x, y] = {z : x_i = y_i => z_i = x_i},
/// translating fitnesses by the weight of the common part, and returns the
/// best embedded point found. `a` must be the Hamming distance of x and y;
/// x.fitness and y.fitness must be the true weights (visible fitnesses).
/// Every submitted point agrees with x wherever x and y agree. Points whose
/// outer fitness is blanked to 0 are reported to the solver as -1.
Sample simulate_on_subcube(QueryOracle& oracle, RngStream& rng, Sample x, Sample y, int a,
                           OneMaxSolver& solver, uint64_t budget);

}  // namespace jumplab
