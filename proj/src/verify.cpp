#include "jumplab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "jumplab/extremejump.hpp"
#include "jumplab/harness.hpp"
#include "jumplab/longjump.hpp"
#include "jumplab/shortjump.hpp"
#include "jumplab/stats.hpp"
#include "jumplab/variation.hpp"

namespace jumplab {
namespace {

std::string fmt(double v, int prec = 4) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------- C1

BitString apply_perm(const BitString& x, const std::vector<int>& perm) {
  BitString out(x.size());
  for (int i = 0; i < x.size(); ++i) out.set(i, x.test(perm[static_cast<size_t>(i)]));
  return out;
}

struct OpCase {
  std::string name;
  std::vector<BitString> parents;
  std::function<BitString(RngStream&, const std::vector<BitString>&)> fn;
  bool deterministic = false;
};

// Two-sample chi-square over the 2^n outcome cells; equal sample sizes.
double two_sample_chi2_pvalue(const std::vector<long>& h1, const std::vector<long>& h2) {
  double stat = 0;
  int df = -1;
  for (size_t c = 0; c < h1.size(); ++c) {
    double tot = static_cast<double>(h1[c] + h2[c]);
    if (tot == 0) continue;
    double diff = static_cast<double>(h1[c] - h2[c]);
    stat += diff * diff / tot;
    ++df;
  }
  if (df < 1) return 1.0;
  return chi2_survival(stat, df);
}

uint32_t cell_of(const BitString& x) { return static_cast<uint32_t>(x.words()[0]); }

CriterionResult criterion_operators() {
  const int n = 6;
  const int samples = 100000;
  const double alpha = 1e-3;

  BitString px = BitString::parse("110100");
  BitString py = BitString::parse("101100");
  BitString pz = BitString::parse("010011");
  std::vector<OpCase> cases;
  cases.push_back({"uniform_sample", {}, [n](RngStream& r, const auto&) { return op_uniform(r, n); }});
  cases.push_back({"flip_k(2)", {px}, [](RngStream& r, const auto& p) { return op_flip_k(r, p[0], 2); }});
  cases.push_back({"flip_where_equal(2)",
                   {px, py},
                   [](RngStream& r, const auto& p) { return op_flip_where_equal(r, p[0], p[1], 2); }});
  cases.push_back({"flip_where_different(1)",
                   {px, py},
                   [](RngStream& r, const auto& p) { return op_flip_where_different(r, p[0], p[1], 1); }});
  cases.push_back({"mix(dist2)",
                   {px, py},  // H(px, py) = 2
                   [](RngStream& r, const auto& p) { return op_mix(r, p[0], p[1]); }});
  cases.push_back({"mix(far)",
                   {px, pz},
                   [](RngStream& r, const auto& p) { return op_mix(r, p[0], p[1]); }});
  cases.push_back({"select_bit",
                   {px, py, pz},
                   [](RngStream&, const auto& p) { return op_select_bit(p[0], p[1], p[2]); },
                   true});
  cases.push_back({"copy_where_differs",
                   {px, py, pz},
                   [](RngStream&, const auto& p) { return op_copy_where_differs(p[0], p[1], p[2]); },
                   true});
  cases.push_back({"complement",
                   {px},
                   [](RngStream&, const auto& p) { return op_complement(p[0]); },
                   true});

  BitString shift = BitString::parse("011010");
  std::vector<int> perm = {3, 0, 5, 1, 4, 2};

  bool all_pass = true;
  std::string worst;
  double worst_p = 1.0;
  for (const auto& oc : cases) {
    auto shifted = [&](const BitString& b) { return xor_combine(b, shift); };
    auto permuted = [&](const BitString& b) { return apply_perm(b, perm); };

    for (int mode = 0; mode < 2; ++mode) {
      auto tf = mode == 0 ? std::function<BitString(const BitString&)>(shifted)
                          : std::function<BitString(const BitString&)>(permuted);
      std::vector<BitString> tparents;
      for (const auto& p : oc.parents) tparents.push_back(tf(p));

      if (oc.deterministic) {
        RngStream r1(7771), r2(7772);
        BitString a = tf(oc.fn(r1, oc.parents));
        BitString b = oc.fn(r2, tparents);
        if (!(a == b)) {
          all_pass = false;
          worst = oc.name + (mode == 0 ? "/shift" : "/perm") + " mismatch";
        }
        continue;
      }

      std::vector<long> h1(64, 0), h2(64, 0);
      RngStream r1(9000 + mode), r2(9100 + mode);
      for (int s = 0; s < samples; ++s) h1[cell_of(tf(oc.fn(r1, oc.parents)))]++;
      for (int s = 0; s < samples; ++s) h2[cell_of(oc.fn(r2, tparents))]++;
      double p = two_sample_chi2_pvalue(h1, h2);
      if (p < worst_p) {
        worst_p = p;
        worst = oc.name + (mode == 0 ? "/shift" : "/perm");
      }
      if (p < alpha) all_pass = false;
    }
  }
  return {"C1", "operator unbiasedness (shift/permutation covariance, n=6)", all_pass,
          "min p-value " + fmt(worst_p) + " at " + worst};
}

// ---------------------------------------------------------------- C2

BitString string_of_weight(RngStream& rng, int n, int w) {
  BitString x(n);
  std::vector<int> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<size_t>(i)] = i;
  for (int i = 0; i < w; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
    std::swap(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]);
    x.flip(pos[static_cast<size_t>(i)]);
  }
  return x;
}

CriterionResult criterion_onemax_simulation() {
  const int n = 200, ell = 2, trials = 1000;
  ShortJumpConfig cfg = ShortJumpConfig::from(n, ell);
  cfg.t = 8;
  RngStream rng(4102);
  QueryOracle o(JumpObjective(n, ell));
  int correct = 0;
  for (int tr = 0; tr < trials; ++tr) {
    int w = n - ell + static_cast<int>(rng.below(ell + 1));  // |x|_1 >= n - ell
    Sample s = o.submit(string_of_weight(rng, n, w));
    if (simulate_onemax(o, rng, s, ell, cfg) == w) ++correct;
    if (o.query_count() > 500000) o.reset();
  }
  return {"C2", "OneMax simulation exactness at n=200, ell=2, t=8", correct >= 999,
          std::to_string(correct) + "/1000 correct (need >= 999)"};
}

// ---------------------------------------------------------------- sweep helpers

double success_rate(const std::vector<RunRecord>& rows) {
  if (rows.empty()) return 0.0;
  long ok = 0;
  for (const auto& r : rows) ok += r.success;
  return static_cast<double>(ok) / static_cast<double>(rows.size());
}

double median_at(const std::vector<RunRecord>& rows, int n) {
  for (auto [nn, med] : median_queries_by_n(rows))
    if (nn == n) return med;
  return 0.0;
}

// ---------------------------------------------------------------- C3

CriterionResult criterion_shortjump() {
  SweepConfig sc;
  sc.algorithm = "shortjump-unary";
  sc.n_values = {64, 128, 256};
  sc.ell_rule = EllRule::fixed(2);
  sc.reps = 100;
  sc.base_seed = 1003;
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  double ratio = median_at(rows, 256) / median_at(rows, 64);
  double target = 4.0 * std::log(256.0) / std::log(64.0);
  bool pass = rate >= 0.95 && ratio >= 0.75 * target && ratio <= 1.25 * target;
  return {"C3", "short jump unary scaling (n log n)", pass,
          "success " + fmt(100 * rate, 3) + "%, T(256)/T(64) = " + fmt(ratio) + " vs " +
              fmt(target) + " +-25%"};
}

// ---------------------------------------------------------------- C4

CriterionResult criterion_ternary_longjump() {
  SweepConfig sc;
  sc.algorithm = "longjump-ternary";
  sc.n_values = {64, 128};
  sc.ell_rule.kind = EllRule::Kind::Long;
  sc.ell_rule.eps = 0.25;  // ell = n/4
  sc.reps = 100;
  sc.base_seed = 1004;
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  bool med_ok = true;
  std::string det;
  for (int n : sc.n_values) {
    double med = median_at(rows, n);
    double cap = 40.0 * n * std::log(n);
    med_ok = med_ok && med <= cap;
    det += "median(" + std::to_string(n) + ") = " + fmt(med, 6) + " <= " + fmt(cap, 6) + "; ";
  }
  bool pass = rate >= 0.80 && med_ok;
  return {"C4", "ternary long jump (blockwise, propto n log n)", pass,
          "success " + fmt(100 * rate, 3) + "%; " + det};
}

// ---------------------------------------------------------------- C5

CriterionResult criterion_estimator_contract() {
  struct Cell {
    int n;
    int a;
    long calls = 10000;
    long wrong = 0;
    long out_of_range = 0;
    double bound = 0;
  };
  std::vector<Cell> cells;
  for (int n : {40, 60})
    for (int a : {2, 4, 8, n / 4}) cells.push_back({n, a, 10000, 0, 0});

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      Cell& c = cells[i];
      auto cfg = LongJumpConfig::from(c.n, c.n / 4);
      long T = p_estimator_samples(c.n, c.a, cfg.eps, cfg.K_T);
      RngStream rng(50000 + 13 * static_cast<uint64_t>(i));
      QueryOracle o(JumpObjective(c.n, c.n / 4));
      for (long call = 0; call < c.calls; ++call) {
        o.reset();
        Sample x = o.submit(string_of_weight(rng, c.n, c.n - c.a));
        long est = estimate_distance(o, rng, x, T, cfg);
        if (est != c.a) ++c.wrong;
        if (2 * est < c.a || 2 * est > 3 * c.a) ++c.out_of_range;
      }
      double p = static_cast<double>(c.a) / (16.0 * c.n);
      c.bound = p + 5.0 * std::sqrt(p * (1 - p) / static_cast<double>(c.calls));
    }
  };
  std::thread t1(work), t2(work);
  t1.join();
  t2.join();

  bool pass = true;
  std::string det;
  for (const auto& c : cells) {
    double rate = static_cast<double>(c.wrong) / static_cast<double>(c.calls);
    double oor = static_cast<double>(c.out_of_range) / static_cast<double>(c.calls);
    bool ok = rate <= c.bound && oor <= c.bound;  // range bullet is dominated by the error bullet
    pass = pass && ok;
    det += "(" + std::to_string(c.n) + "," + std::to_string(c.a) + "): " + fmt(rate) +
           (ok ? " <= " : " > ") + fmt(c.bound) +
           (c.out_of_range ? " oor " + fmt(oor) : "") + "; ";
  }
  return {"C5", "p-estimator contract P(g != a) <= a/16n (and range bullet)", pass, det};
}

// ---------------------------------------------------------------- C6

CriterionResult criterion_unary_longjump() {
  SweepConfig sc;
  sc.algorithm = "longjump-unary";
  sc.n_values = {50, 100, 150};
  sc.ell_rule.kind = EllRule::Kind::Long;
  sc.ell_rule.eps = 0.25;
  sc.reps = 50;
  sc.base_seed = 1006;
  sc.fast_engine = true;  // weight-space twin: bit-level stores are gigabytes here
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  double slope = fit_scaling(rows).loglog_slope;
  bool pass = rate >= 0.60 && slope >= 1.6 && slope <= 2.6;
  return {"C6", "unary long jump (estimator walk, ~n^2)", pass,
          "success " + fmt(100 * rate, 3) + "%, log-log slope " + fmt(slope)};
}

// ---------------------------------------------------------------- C7

CriterionResult criterion_ternary_extreme() {
  SweepConfig sc;
  sc.algorithm = "extreme-ternary";
  sc.n_values = {50, 100, 200, 400};
  sc.ell_rule.kind = EllRule::Kind::Extreme;
  sc.reps = 100;
  sc.base_seed = 1007;
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  bool mean_ok = true;
  std::string det;
  for (int n : sc.n_values) {
    double sum = 0;
    long cnt = 0;
    for (const auto& r : rows)
      if (r.n == n && r.success) {
        sum += static_cast<double>(r.queries);
        ++cnt;
      }
    double mean = cnt ? sum / static_cast<double>(cnt) : 1e18;
    mean_ok = mean_ok && mean <= 6.0 * n;
    det += "mean(" + std::to_string(n) + ") = " + fmt(mean, 5) + "; ";
  }
  double slope = fit_scaling(rows).loglog_slope;
  bool pass = rate == 1.0 && mean_ok && slope >= 0.85 && slope <= 1.15;
  return {"C7", "ternary extreme (bit probing, ~n)", pass,
          "success " + fmt(100 * rate, 4) + "%, slope " + fmt(slope) + "; " + det};
}

// ---------------------------------------------------------------- C8

CriterionResult criterion_binary_extreme() {
  SweepConfig sc;
  sc.algorithm = "extreme-binary";
  sc.n_values = {64, 128, 256};
  sc.ell_rule.kind = EllRule::Kind::Extreme;
  sc.reps = 100;
  sc.base_seed = 1008;
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  double c_fit = median_at(rows, 64) / (64.0 * std::log2(64.0));
  bool med_ok = true;
  std::string det = "C = " + fmt(c_fit) + "; ";
  for (int n : {128, 256}) {
    double med = median_at(rows, n);
    double predicted = c_fit * n * std::log2(n);
    bool ok = med >= 0.6 * predicted && med <= 1.4 * predicted;
    med_ok = med_ok && ok;
    det += "median(" + std::to_string(n) + ") = " + fmt(med, 6) + " vs " + fmt(predicted, 6) + "; ";
  }
  bool pass = rate >= 0.90 && med_ok;
  return {"C8", "binary extreme (opposing pairs, ~n log n)", pass,
          "success " + fmt(100 * rate, 3) + "%; " + det};
}

// ---------------------------------------------------------------- C9

CriterionResult criterion_unary_extreme() {
  SweepConfig sc;
  sc.algorithm = "extreme-unary";
  sc.n_values = {16, 32};
  sc.ell_rule.kind = EllRule::Kind::Extreme;
  sc.reps = 100;
  sc.base_seed = 1009;
  sc.fast_engine = true;  // weight-only fast path
  auto rows = sweep(sc);
  double rate = success_rate(rows);
  bool accounting_ok = true;
  for (const auto& r : rows) {
    auto budget = static_cast<uint64_t>(std::llround(50.0 * std::pow(r.n, 4.5)));
    if (r.queries > budget) accounting_ok = false;          // never exceeds budget
    if (!r.success && r.queries < budget) accounting_ok = false;  // failure = budget spent
  }
  bool pass = rate >= 0.50 && accounting_ok;
  return {"C9", "unary extreme (parity walk, ~n^4.5, constant probability)", pass,
          "success " + fmt(100 * rate, 3) + "%, budget accounting " +
              (accounting_ok ? "exact" : "VIOLATED")};
}

// ---------------------------------------------------------------- C10

// Exhaustive flip-set enumeration: probability that flipping exactly `flips`
// bits of a weight-w string yields weight n/2.
ExactProb brute_force_pa(int n, int w, int flips) {
  uint64_t hits = 0, total = 0;
  // enumerate bitmasks of popcount == flips over n <= 16 positions; by
  // symmetry the weight-w string with the first w positions set is generic
  uint64_t ones_mask = (uint64_t{1} << w) - 1;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    if (std::popcount(m) != flips) continue;
    ++total;
    int ones_flipped = std::popcount(m & ones_mask);
    int new_w = w - ones_flipped + (flips - ones_flipped);
    if (new_w == n / 2) ++hits;
  }
  return ExactProb::ratio(BigUint(hits), BigUint(total));
}

CriterionResult criterion_exact_combinatorics() {
  bool pass = true;
  std::string det;

  // p_flip_even/odd against exhaustive enumeration, all n <= 16, all valid a
  for (int n = 2; n <= 16 && pass; n += 2) {
    for (int a = 0; a <= n && pass; ++a) {
      int flips = (a % 2 == 0) ? n / 2 : n / 2 - 1;
      ExactProb expected = brute_force_pa(n, a, flips);
      ExactProb got = (a % 2 == 0) ? p_flip_even(n, a) : p_flip_odd(n, a);
      if (!(expected == got)) {
        pass = false;
        det = "p_flip mismatch at n=" + std::to_string(n) + " a=" + std::to_string(a);
      }
    }
  }

  // p_diff closed forms vs direct subtraction, n <= 64, a over the a_sym range
  for (int n = 4; n <= 64 && pass; n += 2) {
    for (int a = 2; a <= n / 2 && pass; ++a) {
      if (a % 2 == 1 && a < 3) continue;
      ExactProb direct = (a % 2 == 0) ? p_flip_even(n, a - 2).sub(p_flip_even(n, a))
                                      : p_flip_odd(n, a - 2).sub(p_flip_odd(n, a));
      if (!(p_diff(n, a) == direct)) {
        pass = false;
        det = "p_diff mismatch at n=" + std::to_string(n) + " a=" + std::to_string(a);
      }
    }
  }

  // Robbins bounds for all m <= 500
  for (int m = 1; m <= 500 && pass; ++m) {
    if (!robbins_check(m)) {
      pass = false;
      det = "Robbins bound fails at m=" + std::to_string(m);
    }
  }
  if (pass) det = "enumeration (n<=16), closed-form differences (n<=64), Robbins (m<=500)";
  return {"C10", "exact combinatorics (p_a, differences, central binomials)", pass, det};
}

// ---------------------------------------------------------------- C11

CriterionResult criterion_concentration() {
  const int n = 40;
  const int trials = 100000;
  auto cfg = LongJumpConfig::from(n, n / 4);
  RngStream rng(1011);
  bool pass = true;
  std::string det;
  for (int T : {1, 8}) {
    for (int a : {5, 10, 20}) {
      long m = static_cast<long>(T) * a;
      BitString x = string_of_weight(rng, n, n - a);
      double mean = -cfg.eps * static_cast<double>(m);
      std::vector<double> devs(static_cast<size_t>(trials));
      for (int tr = 0; tr < trials; ++tr) {
        long d_stat = 0;
        for (int i = 0; i < T; ++i)
          d_stat += weight(op_flip_k(rng, x, cfg.flips)) - cfg.offset;
        devs[static_cast<size_t>(tr)] = std::fabs(static_cast<double>(d_stat) - mean);
      }
      for (int grid = 1; grid <= 6; ++grid) {
        double d = grid * std::sqrt(static_cast<double>(m)) / 2.0;
        long exceed = 0;
        for (double dev : devs) exceed += dev >= d;
        double freq = static_cast<double>(exceed) / trials;
        double bound = chernoff_tail(d, m);
        if (freq > bound) {
          pass = false;
          det += "exceeds at T=" + std::to_string(T) + " a=" + std::to_string(a) +
                 " d=" + fmt(d) + ": " + fmt(freq) + " > " + fmt(bound) + "; ";
        }
      }
    }
  }
  if (pass) det = "tail frequencies below 2 exp(-d^2/2m) on the whole grid";
  return {"C11", "additive Chernoff bound for the batch statistic", pass, det};
}

// ---------------------------------------------------------------- C12

CriterionResult criterion_query_accounting() {
  struct Probe {
    const char* alg;
    int n;
    bool fast;
  };
  std::vector<Probe> probes = {
      {"rls", 64, false},          {"shortjump-unary", 64, false}, {"longjump-ternary", 64, false},
      {"extreme-ternary", 100, false}, {"extreme-binary", 64, false},  {"longjump-unary", 40, false},
      {"longjump-unary", 60, true}, {"extreme-unary", 16, true},
  };
  bool pass = true;
  std::string det;
  int checked = 0;
  for (const auto& p : probes) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      RunConfig rc;
      rc.algorithm = p.alg;
      rc.n = p.n;
      rc.seed = seed;
      rc.fast_engine = p.fast;
      RunAudit audit;
      RunRecord rec = run_single(rc, &audit);
      ++checked;
      bool ok = audit.query_count <= audit.budget &&
                (rec.success ? (audit.first_hit && rec.queries == *audit.first_hit &&
                                *audit.first_hit <= audit.query_count)
                             : (!audit.first_hit && rec.queries == audit.query_count));
      if (!ok) {
        pass = false;
        det += std::string(p.alg) + "/seed" + std::to_string(seed) + " inconsistent; ";
      }
    }
  }
  if (pass) det = std::to_string(checked) + " runs audited, record counters = oracle counters";
  return {"C12", "query accounting (records match oracle counters)", pass, det};
}

using CriterionFn = CriterionResult (*)();

std::vector<CriterionFn> suite_criteria(const std::string& name) {
  if (name == "operators") return {criterion_operators};
  if (name == "stats") return {criterion_exact_combinatorics, criterion_concentration};
  if (name == "estimators") return {criterion_estimator_contract};
  if (name == "e2e")
    return {criterion_operators,        criterion_onemax_simulation, criterion_shortjump,
            criterion_ternary_longjump, criterion_estimator_contract, criterion_unary_longjump,
            criterion_ternary_extreme,  criterion_binary_extreme,     criterion_unary_extreme,
            criterion_exact_combinatorics, criterion_concentration,   criterion_query_accounting};
  throw InvalidConfig("unknown suite: " + name + " (operators|stats|estimators|e2e)");
}

std::vector<CriterionResult> run_criteria(const std::vector<CriterionFn>& fns, std::ostream* out) {
  std::vector<CriterionResult> results;
  for (CriterionFn fn : fns) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (out) {
      *out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " -- " << r.details
           << " [" << secs << "s]\n";
      out->flush();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace

std::vector<CriterionResult> verify_operators() {
  return run_criteria(suite_criteria("operators"), nullptr);
}
std::vector<CriterionResult> verify_stats() { return run_criteria(suite_criteria("stats"), nullptr); }
std::vector<CriterionResult> verify_estimators() {
  return run_criteria(suite_criteria("estimators"), nullptr);
}
std::vector<CriterionResult> verify_e2e() { return run_criteria(suite_criteria("e2e"), nullptr); }

int run_suite(const std::string& name, std::ostream& out) {
  auto results = run_criteria(suite_criteria(name), &out);
  int failures = 0;
  for (const auto& r : results) failures += !r.pass;
  out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
      << " (" << results.size() << " total)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace jumplab
