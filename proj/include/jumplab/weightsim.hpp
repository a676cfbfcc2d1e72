#pragma once

#include <cstdint>
#include <optional>

#include "jumplab/objective.hpp"

namespace jumplab {

/// Query-accounting twin of QueryOracle for algorithms built exclusively
/// from unary operators: the offspring distribution of every such operator
/// depends on the parent only through its weight, so runs can be simulated
/// in weight space with identical statistics. Counters, budget and
/// first-hit semantics mirror QueryOracle exactly.
class WeightOracle {
 public:
  explicit WeightOracle(JumpObjective obj, std::optional<uint64_t> budget = std::nullopt)
      : obj_(obj), budget_(budget) {}

  long submit_weight(int w) {
    if (budget_ && queries_ >= *budget_) throw BudgetExhausted{};
    if (attempt_cap_ && queries_ - attempt_start_ >= attempt_cap_) throw AttemptExhausted{};
    ++queries_;
    bool hit = (w == obj_.n);
    if (hit && !first_hit_) first_hit_ = queries_;
    long f = obj_.value_of_weight(w);
    if (hit && stop_on_optimum_) throw OptimumFound{};
    return f;
  }

  const JumpObjective& objective() const { return obj_; }
  int n() const { return obj_.n; }
  uint64_t query_count() const { return queries_; }
  std::optional<uint64_t> first_hit() const { return first_hit_; }
  bool optimum_found() const { return first_hit_.has_value(); }
  std::optional<uint64_t> budget() const { return budget_; }
  void set_stop_on_optimum(bool on) { stop_on_optimum_ = on; }

  void begin_attempt(uint64_t cap) {
    attempt_start_ = queries_;
    attempt_cap_ = cap;
  }
  uint64_t attempt_used() const { return queries_ - attempt_start_; }

 private:
  JumpObjective obj_;
  uint64_t queries_ = 0;
  std::optional<uint64_t> first_hit_;
  std::optional<uint64_t> budget_;
  bool stop_on_optimum_ = false;
  uint64_t attempt_start_ = 0;
  uint64_t attempt_cap_ = 0;
};

}  // namespace jumplab
