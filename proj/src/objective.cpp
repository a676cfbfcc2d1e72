#include "jumplab/objective.hpp"

#include <bit>

namespace jumplab {
namespace detail {

std::span<const uint64_t> point_words(const QueryOracle& o, SearchPointHandle h) {
  uint64_t idx = h.id;
  if (idx * o.wpp_ >= o.store_.size()) throw std::out_of_range("unknown search point handle");
  return {o.store_.data() + idx * o.wpp_, o.wpp_};
}

Sample submit_raw(QueryOracle& o, const uint64_t* words) {
  if (o.budget_ && o.queries_ >= *o.budget_) throw BudgetExhausted{};
  if (o.attempt_cap_ && o.queries_ - o.attempt_start_ >= o.attempt_cap_) throw AttemptExhausted{};

  uint64_t id = o.queries_;
  o.store_.insert(o.store_.end(), words, words + o.wpp_);
  ++o.queries_;

  int w = 0;
  for (size_t i = 0; i < o.wpp_; ++i) w += std::popcount(words[i]);
  bool hit = (w == o.obj_.n);
  if (hit && !o.first_hit_) o.first_hit_ = o.queries_;

  Sample s{SearchPointHandle{id}, o.obj_.value_of_weight(w)};
  if (hit && o.stop_on_optimum_) throw OptimumFound{};
  return s;
}

}  // namespace detail

namespace testing {

BitString reveal(const QueryOracle& o, SearchPointHandle h) {
  auto ws = detail::point_words(o, h);
  BitString x(o.objective().n);
  auto out = x.words();
  for (size_t i = 0; i < ws.size(); ++i) out[i] = ws[i];
  return x;
}

}  // namespace testing
}  // namespace jumplab
