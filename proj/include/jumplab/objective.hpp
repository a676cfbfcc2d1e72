#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "jumplab/bits.hpp"

namespace jumplab {

/// Fitness landscape jump_ell over {0,1}^n:
///   n          if |x|_1 = n,
///   |x|_1      if ell < |x|_1 < n - ell,
///   0          otherwise.
/// ell = 0 is OneMax (with the single zero-fitness point 0^n).
struct JumpObjective {
  int n;
  int ell;

  JumpObjective(int n_, int ell_) : n(n_), ell(ell_) {
    if (n < 1) throw std::invalid_argument("JumpObjective: n must be >= 1");
    if (ell < 0 || 2 * ell >= n) throw std::invalid_argument("JumpObjective: need 0 <= ell < n/2");
  }

  long value_of_weight(int w) const {
    if (w == n) return n;
    if (w > ell && w < n - ell) return w;
    return 0;
  }
  long value(const BitString& x) const {
    if (x.size() != n) throw std::invalid_argument("JumpObjective: length mismatch");
    return value_of_weight(x.weight());
  }
  bool extreme() const { return ell == n / 2 - 1 && n % 2 == 0; }
};

inline long jump_value(const JumpObjective& obj, const BitString& x) { return obj.value(x); }

/// Opaque reference to a stored search point. Algorithms may pass handles to
/// variation operators and compare fitnesses, but cannot read bits through one.
struct SearchPointHandle {
  uint64_t id = ~uint64_t{0};
  bool operator==(const SearchPointHandle&) const = default;
};

struct Sample {
  SearchPointHandle handle;
  long fitness = -1;
};

/// Total query budget used up.
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("query budget exhausted") {}
};
/// Per-attempt query fence hit; the restart wrapper catches this.
struct AttemptExhausted : std::runtime_error {
  AttemptExhausted() : std::runtime_error("attempt query cap exhausted") {}
};
/// Thrown right after the optimum is first queried when stop-on-optimum is on.
struct OptimumFound : std::runtime_error {
  OptimumFound() : std::runtime_error("optimum queried") {}
};

class QueryOracle;
namespace detail {
std::span<const uint64_t> point_words(const QueryOracle& o, SearchPointHandle h);
Sample submit_raw(QueryOracle& o, const uint64_t* words);
}  // namespace detail

/// Black-box gatekeeper: stores every submitted point, counts queries, and
/// records the query index at which the all-ones string is first seen.
class QueryOracle {
 public:
  explicit QueryOracle(JumpObjective obj, std::optional<uint64_t> budget = std::nullopt)
      : obj_(obj), wpp_(static_cast<size_t>(BitString::words_for(obj.n))), budget_(budget) {}

  Sample submit(const BitString& x) {
    if (x.size() != obj_.n) throw std::invalid_argument("submit: length mismatch");
    return detail::submit_raw(*this, x.words().data());
  }

  const JumpObjective& objective() const { return obj_; }
  int n() const { return obj_.n; }
  uint64_t query_count() const { return queries_; }
  std::optional<uint64_t> first_hit() const { return first_hit_; }
  bool optimum_found() const { return first_hit_.has_value(); }
  std::optional<uint64_t> budget() const { return budget_; }

  void set_stop_on_optimum(bool on) { stop_on_optimum_ = on; }

  /// Start a fresh attempt allowed at most `cap` further queries (0 = no cap).
  void begin_attempt(uint64_t cap) {
    attempt_start_ = queries_;
    attempt_cap_ = cap;
  }
  uint64_t attempt_used() const { return queries_ - attempt_start_; }

  /// Drop all stored points and counters; keeps objective and budget.
  void reset() {
    store_.clear();
    queries_ = 0;
    first_hit_.reset();
    attempt_start_ = 0;
    attempt_cap_ = 0;
  }

 private:
  friend std::span<const uint64_t> detail::point_words(const QueryOracle&, SearchPointHandle);
  friend Sample detail::submit_raw(QueryOracle&, const uint64_t*);

  JumpObjective obj_;
  size_t wpp_;
  std::vector<uint64_t> store_;  // flat, wpp_ words per point, handle id = index
  uint64_t queries_ = 0;
  std::optional<uint64_t> first_hit_;
  std::optional<uint64_t> budget_;
  bool stop_on_optimum_ = false;
  uint64_t attempt_start_ = 0;
  uint64_t attempt_cap_ = 0;
};

namespace testing {
/// White-box escape hatch for tests and the harness only; algorithm code
/// paths must never call this.
BitString reveal(const QueryOracle& o, SearchPointHandle h);
}  // namespace testing

/// Outcome of one (restart-wrapped) optimization run against one oracle.
struct OptResult {
  bool found = false;
  int restarts = 0;
};

/// Repeats single attempts under per-attempt query caps until the optimum is
/// queried or the oracle budget runs out. The oracle should carry a budget,
/// otherwise a never-succeeding attempt loops forever. Works for QueryOracle
/// and its weight-space twin.
template <typename Oracle, typename AttemptFn>
OptResult run_restarting(Oracle& oracle, uint64_t per_attempt_queries, AttemptFn&& attempt) {
  OptResult out;
  out.restarts = -1;
  for (;;) {
    ++out.restarts;
    oracle.begin_attempt(per_attempt_queries);
    try {
      attempt();
    } catch (const AttemptExhausted&) {
      continue;
    } catch (const OptimumFound&) {
      break;
    } catch (const BudgetExhausted&) {
      break;
    }
    if (oracle.optimum_found()) break;
  }
  out.found = oracle.optimum_found();
  return out;
}

}  // namespace jumplab
