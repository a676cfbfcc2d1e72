#include "jumplab/onemax.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace jumplab {

ViewSample RlsSolver::optimize(OneMaxView& view, uint64_t query_budget, RngStream& rng) {
  ViewSample cur = view.sample_uniform(rng);
  while (cur.value < view.dimension() && view.queries_used() < query_budget) {
    ViewSample cand = view.sample_flip(rng, cur.handle, 1);
    if (cand.value >= cur.value) cur = cand;
  }
  return cur;
}

std::unique_ptr<OneMaxSolver> make_solver(std::string_view name) {
  if (name == "rls") return std::make_unique<RlsSolver>();
  throw std::invalid_argument("unknown OneMax solver: " + std::string(name));
}

namespace {

// View over [x, y]: coordinates are the positions where x and y differ.
// Inner value of an embedded point z is weight(z) - base_weight where
// base_weight is the weight of the part shared by x and y.
class SubcubeView final : public OneMaxView {
 public:
  SubcubeView(QueryOracle& o, Sample x, Sample y, int a)
      : o_(o), start_(o.query_count()) {
    auto xw = detail::point_words(o, x.handle);
    auto yw = detail::point_words(o, y.handle);
    base_.assign(xw.begin(), xw.end());
    for (size_t wi = 0; wi < base_.size(); ++wi) {
      uint64_t d = base_[wi] ^ yw[wi];
      while (d) {
        int b = std::countr_zero(d);
        block_.push_back(static_cast<int>(wi) * 64 + b);
        d &= d - 1;
      }
    }
    if (static_cast<int>(block_.size()) != a)
      throw std::invalid_argument("simulate_on_subcube: a != distance(x, y)");
    // (|x|_1 + |y|_1 - a) / 2; the fitnesses are the visible weights.
    long bw2 = x.fitness + y.fitness - a;
    if (bw2 < 0 || bw2 % 2 != 0)
      throw std::invalid_argument("simulate_on_subcube: inconsistent fitnesses");
    base_weight_ = bw2 / 2;
    x_outer_ = x;
  }

  int dimension() const override { return static_cast<int>(block_.size()); }
  uint64_t queries_used() const override { return o_.query_count() - start_; }

  ViewSample sample_uniform(RngStream& rng) override {
    buf_ = base_;
    for (int pos : block_)
      if (rng.coin()) buf_[static_cast<size_t>(pos >> 6)] ^= uint64_t{1} << (pos & 63);
    return record(detail::submit_raw(o_, buf_.data()));
  }

  ViewSample sample_flip(RngStream& rng, SearchPointHandle parent, int k) override {
    auto pw = detail::point_words(o_, parent);
    buf_.assign(pw.begin(), pw.end());
    int m = static_cast<int>(block_.size());
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(m - i)));
      std::swap(block_[static_cast<size_t>(i)], block_[static_cast<size_t>(j)]);
      int pos = block_[static_cast<size_t>(i)];
      buf_[static_cast<size_t>(pos >> 6)] ^= uint64_t{1} << (pos & 63);
    }
    return record(detail::submit_raw(o_, buf_.data()));
  }

  Sample best_outer() const { return best_; }
  Sample start_point() const { return x_outer_; }

 private:
  ViewSample record(Sample s) {
    long inner = s.fitness == 0 ? -1 : s.fitness - base_weight_;
    if (inner > best_inner_) {
      best_inner_ = inner;
      best_ = s;
    }
    return {s.handle, inner};
  }

  QueryOracle& o_;
  uint64_t start_;
  std::vector<uint64_t> base_;
  std::vector<int> block_;
  std::vector<uint64_t> buf_;
  long base_weight_ = 0;
  Sample x_outer_;
  Sample best_;
  long best_inner_ = -2;
};

}  // namespace

Sample simulate_on_subcube(QueryOracle& oracle, RngStream& rng, Sample x, Sample y, int a,
                           OneMaxSolver& solver, uint64_t budget) {
  if (a == 0) return x;  // empty subcube, nothing to optimize
  SubcubeView view(oracle, x, y, a);
  solver.optimize(view, budget, rng);
  Sample best = view.best_outer();
  return best.handle == SearchPointHandle{} ? x : best;
}

}  // namespace jumplab
