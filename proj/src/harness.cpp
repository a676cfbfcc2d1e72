#include "jumplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cctype>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jumplab/extremejump.hpp"
#include "jumplab/longjump.hpp"
#include "jumplab/onemax.hpp"
#include "jumplab/shortjump.hpp"
#include "jumplab/variation.hpp"
#include "jumplab/weightsim.hpp"

namespace jumplab {

// ---------- budget expressions ----------

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, double n) : s_(text), n_(n) {}

  double parse() {
    double v = sum();
    skip_ws();
    if (pos_ != s_.size()) throw InvalidConfig("budget expression: trailing input at '" + rest() + "'");
    return v;
  }

 private:
  double sum() {
    double v = product();
    for (;;) {
      skip_ws();
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }

  double product() {
    double v = power();
    for (;;) {
      skip_ws();
      if (eat('*'))
        v *= power();
      else if (eat('/'))
        v /= power();
      else
        return v;
    }
  }

  double power() {
    double v = atom();
    skip_ws();
    if (eat('^')) return std::pow(v, power());
    return v;
  }

  double atom() {
    skip_ws();
    if (eat('(')) {
      double v = sum();
      expect(')');
      return v;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      size_t end = pos_;
      while (end < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' || s_[end] == 'e' ||
              s_[end] == 'E' || ((s_[end] == '+' || s_[end] == '-') && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
        ++end;
      double v = std::stod(s_.substr(pos_, end - pos_));
      pos_ = end;
      return v;
    }
    std::string id = ident();
    if (id == "n") return n_;
    if (id == "log" || id == "ln") return std::log(arg());
    if (id == "log2") return std::log2(arg());
    if (id == "sqrt") return std::sqrt(arg());
    if (id == "exp") return std::exp(arg());
    throw InvalidConfig("budget expression: unknown token '" + id + "'");
  }

  double arg() {
    skip_ws();
    expect('(');
    double v = sum();
    expect(')');
    return v;
  }

  std::string ident() {
    skip_ws();
    size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    if (end == pos_) throw InvalidConfig("budget expression: parse error at '" + rest() + "'");
    std::string id = s_.substr(pos_, end - pos_);
    pos_ = end;
    return id;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw InvalidConfig(std::string("budget expression: expected '") + c + "'");
  }
  std::string rest() { return s_.substr(pos_); }

  std::string s_;
  double n_;
  size_t pos_ = 0;
};

}  // namespace

double eval_budget_expr(const std::string& expr, double n) {
  double v = ExprParser(expr, n).parse();
  if (!std::isfinite(v)) throw InvalidConfig("budget expression: non-finite value");
  return v;
}

// ---------- algorithm registry ----------

namespace {

struct AlgoInfo {
  const char* name;
  int arity;
  const char* budget_rule;
  const char* attempt_rule;
  bool fast_capable;
};

constexpr AlgoInfo kAlgos[] = {
    {"rls", 1, "20*n*log(n)+200", "5*n*log(n)+50", false},
    {"shortjump-unary", 1, "20*n*log(n)+200", "5*n*log(n)+50", false},
    {"longjump-unary", 1, "20000*n^2", "5000*n^2", true},
    {"longjump-ternary", 3, "40*n*log(n)+400", "10*n*log(n)+100", false},
    {"extreme-unary", 1, "50*n^4.5", "4*n^4.5", true},
    {"extreme-binary", 2, "32*n*log2(n)+320", "8*n*log2(n)+80", false},
    {"extreme-ternary", 3, "24*n+80*sqrt(n)+96", "6*n+20*sqrt(n)+24", false},
};

const AlgoInfo& algo_info(const std::string& name) {
  for (const auto& a : kAlgos)
    if (name == a.name) return a;
  throw InvalidConfig("unknown algorithm: " + name);
}

// Direct fitness view: RLS climbing the jump values themselves.
class DirectView final : public OneMaxView {
 public:
  DirectView(QueryOracle& o) : o_(o), start_(o.query_count()) {}
  int dimension() const override { return o_.n(); }
  uint64_t queries_used() const override { return o_.query_count() - start_; }
  ViewSample sample_uniform(RngStream& rng) override {
    Sample s = jumplab::sample_uniform(o_, rng);
    return {s.handle, s.fitness};
  }
  ViewSample sample_flip(RngStream& rng, SearchPointHandle parent, int k) override {
    Sample s = sample_flip_k(o_, rng, parent, k);
    return {s.handle, s.fitness};
  }

 private:
  QueryOracle& o_;
  uint64_t start_;
};

}  // namespace

std::vector<std::string> algorithm_names() {
  std::vector<std::string> out;
  for (const auto& a : kAlgos) out.emplace_back(a.name);
  return out;
}

int algorithm_arity(const std::string& name) { return algo_info(name).arity; }
std::string default_budget_rule(const std::string& name) { return algo_info(name).budget_rule; }
std::string default_attempt_rule(const std::string& name) { return algo_info(name).attempt_rule; }

int default_ell(const std::string& name, int n) {
  if (name == "rls") return 0;
  if (name == "shortjump-unary") return 2;
  if (name == "longjump-unary" || name == "longjump-ternary") return n / 4;
  return n / 2 - 1;  // extreme family
}

namespace {

struct ValidatedRun {
  int ell;
  uint64_t budget;
  uint64_t attempt;
};

ValidatedRun validate_run(const RunConfig& config) {
  const AlgoInfo& info = algo_info(config.algorithm);
  if (config.n < 2) throw InvalidConfig("run_single: n must be >= 2");
  int ell = config.ell.value_or(default_ell(config.algorithm, config.n));
  if (ell < 0 || 2 * ell >= config.n) throw InvalidConfig("run_single: need 0 <= ell < n/2");
  bool extreme_alg = config.algorithm.rfind("extreme-", 0) == 0;
  if (extreme_alg && (config.n % 2 != 0 || ell != config.n / 2 - 1))
    throw InvalidConfig("run_single: extreme algorithms need n even and ell = n/2 - 1");
  bool long_alg = config.algorithm.rfind("longjump-", 0) == 0;
  if (long_alg) {
    try {
      LongJumpConfig::from(config.n, ell, config.K_T);
    } catch (const std::invalid_argument& e) {
      throw InvalidConfig(e.what());
    }
  }
  if (config.fast_engine && !info.fast_capable)
    throw InvalidConfig("run_single: no weight-space engine for " + config.algorithm);

  auto budget = static_cast<uint64_t>(std::llround(
      eval_budget_expr(config.budget_rule.value_or(info.budget_rule), config.n)));
  auto attempt = static_cast<uint64_t>(std::llround(
      eval_budget_expr(config.attempt_rule.value_or(info.attempt_rule), config.n)));
  if (budget < 1 || attempt < 1) throw InvalidConfig("run_single: budgets must be >= 1");
  return {ell, budget, attempt};
}

}  // namespace

RunRecord run_single(const RunConfig& config, RunAudit* audit) {
  const AlgoInfo& info = algo_info(config.algorithm);
  auto [ell, budget, attempt] = validate_run(config);

  JumpObjective obj(config.n, ell);
  RngStream rng(config.seed);

  RunRecord rec;
  rec.algorithm = config.algorithm;
  rec.n = config.n;
  rec.ell = ell;
  rec.arity = info.arity;
  rec.seed = config.seed;

  auto t0 = std::chrono::steady_clock::now();
  OptResult res;
  uint64_t used = 0;
  std::optional<uint64_t> first_hit;

  if (config.fast_engine) {
    WeightOracle o(obj, budget);
    o.set_stop_on_optimum(true);
    if (config.algorithm == "longjump-unary") {
      auto cfg = LongJumpConfig::from(config.n, ell, config.K_T);
      res = unary_longjump_optimize_fast(o, rng, cfg, attempt);
    } else {
      ExtremeEstimatorConfig cfg{config.K};
      res = unary_extreme_optimize_fast(o, rng, cfg, attempt);
    }
    used = o.query_count();
    first_hit = o.first_hit();
  } else {
    QueryOracle o(obj, budget);
    o.set_stop_on_optimum(true);
    if (config.algorithm == "rls") {
      RlsSolver rls;
      res = run_restarting(o, attempt, [&] {
        DirectView view(o);
        rls.optimize(view, attempt, rng);
      });
    } else if (config.algorithm == "shortjump-unary") {
      auto solver = make_solver(config.solver);
      auto cfg = ShortJumpConfig::from(config.n, ell, config.c.value_or(4.0));
      if (config.eps) {
        cfg.eps = *config.eps;
        cfg.t = std::clamp(static_cast<int>(std::ceil(cfg.c / (2.0 * cfg.eps) - 1e-9)), 1, 64);
      }
      cfg.known_ell = config.known_ell;
      res = shortjump_optimize(o, rng, cfg, *solver, attempt);
    } else if (config.algorithm == "longjump-unary") {
      auto cfg = LongJumpConfig::from(config.n, ell, config.K_T);
      res = unary_longjump_optimize(o, rng, cfg, attempt);
    } else if (config.algorithm == "longjump-ternary") {
      auto solver = make_solver(config.solver);
      auto cfg = LongJumpConfig::from(config.n, ell, config.K_T);
      res = ternary_longjump_optimize(o, rng, cfg, *solver, attempt);
    } else if (config.algorithm == "extreme-unary") {
      ExtremeEstimatorConfig cfg{config.K};
      res = unary_extreme_optimize(o, rng, cfg, attempt);
    } else if (config.algorithm == "extreme-binary") {
      res = binary_extreme_optimize(o, rng, attempt);
    } else {
      res = ternary_extreme_optimize(o, rng, attempt);
    }
    used = o.query_count();
    first_hit = o.first_hit();
  }

  auto t1 = std::chrono::steady_clock::now();
  rec.success = first_hit.has_value();
  rec.queries = rec.success ? *first_hit : used;
  rec.restarts = res.restarts;
  rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  if (audit) {
    audit->query_count = used;
    audit->first_hit = first_hit;
    audit->budget = budget;
  }
  return rec;
}

// ---------- sweeps ----------

int EllRule::ell_for(int n) const {
  switch (kind) {
    case Kind::Fixed:
      return value;
    case Kind::Short:
      return static_cast<int>(std::floor(std::pow(n, 0.5 - eps)));
    case Kind::Long:
      return static_cast<int>(std::floor((0.5 - eps) * n));
    case Kind::Extreme:
      return n / 2 - 1;
  }
  throw InvalidConfig("bad ell rule");
}

std::vector<RunRecord> sweep(const SweepConfig& config) {
  if (config.reps < 1 || config.n_values.empty()) throw InvalidConfig("sweep: nothing to run");
  struct Row {
    int n;
    uint64_t stream;
  };
  std::vector<Row> rows;
  rows.reserve(config.n_values.size() * static_cast<size_t>(config.reps));
  uint64_t idx = 0;
  for (int n : config.n_values)
    for (int r = 0; r < config.reps; ++r) rows.push_back({n, idx++});

  auto config_for = [&](size_t i) {
    RunConfig rc;
    rc.algorithm = config.algorithm;
    rc.n = rows[i].n;
    rc.ell = config.ell_rule.ell_for(rows[i].n);
    // per-row stream derived from the base seed; any row is reproducible alone
    rc.seed = RngStream(config.base_seed, rows[i].stream).next();
    rc.budget_rule = config.budget_rule;
    rc.attempt_rule = config.attempt_rule;
    rc.solver = config.solver;
    rc.known_ell = config.known_ell;
    rc.eps = config.eps;
    rc.c = config.c;
    rc.K = config.K;
    rc.K_T = config.K_T;
    rc.fast_engine = config.fast_engine;
    return rc;
  };
  for (int n : config.n_values) {
    RunConfig probe = config_for(0);
    probe.n = n;
    probe.ell = config.ell_rule.ell_for(n);
    validate_run(probe);  // reject bad (n, ell) pairs before any thread starts
  }

  std::vector<RunRecord> out(rows.size());
  std::atomic<size_t> next{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;
  int workers = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(rows.size()));

  auto work = [&] {
    try {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        out[i] = run_single(config_for(i));
      }
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!worker_error) worker_error = std::current_exception();
      next.store(rows.size());  // drain remaining work
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers - 1));
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (worker_error) std::rethrow_exception(worker_error);
  return out;
}

// ---------- CSV ----------

void write_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.algorithm << ',' << (r.ell == 0 ? "onemax" : "jump") << ',' << r.n << ',' << r.ell
        << ',' << r.arity << ',' << r.seed << ',' << r.queries << ',' << (r.success ? 1 : 0) << ','
        << r.restarts << ',' << r.wall_ms << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidConfig("csv: empty input");
  if (line != kCsvHeader) throw InvalidConfig("csv: unexpected header");
  std::vector<RunRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw InvalidConfig("csv: bad row: " + line);
    RunRecord r;
    r.algorithm = fields[0];
    r.n = std::stoi(fields[2]);
    r.ell = std::stoi(fields[3]);
    r.arity = std::stoi(fields[4]);
    r.seed = std::stoull(fields[5]);
    r.queries = std::stoull(fields[6]);
    r.success = fields[7] == "1";
    r.restarts = std::stoi(fields[8]);
    r.wall_ms = std::stoll(fields[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------- scaling fits ----------

std::vector<std::pair<int, double>> median_queries_by_n(const std::vector<RunRecord>& rows) {
  std::vector<std::pair<int, double>> out;
  std::vector<int> ns;
  for (const auto& r : rows)
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
  std::sort(ns.begin(), ns.end());
  for (int n : ns) {
    std::vector<double> qs;
    for (const auto& r : rows)
      if (r.n == n && r.success) qs.push_back(static_cast<double>(r.queries));
    if (qs.empty())  // no successful run at this n: fall back to all rows
      for (const auto& r : rows)
        if (r.n == n) qs.push_back(static_cast<double>(r.queries));
    std::sort(qs.begin(), qs.end());
    size_t m = qs.size() / 2;
    double median = qs.size() % 2 ? qs[m] : (qs[m - 1] + qs[m]) / 2.0;
    out.emplace_back(n, median);
  }
  return out;
}

namespace {

double model_value(const std::string& model, double n) {
  if (model == "n") return n;
  if (model == "nlogn") return n * std::log(n);
  if (model == "n2") return n * n;
  if (model == "n92") return std::pow(n, 4.5);
  throw InvalidConfig("unknown scaling model: " + model);
}

}  // namespace

FitResult fit_scaling(const std::vector<RunRecord>& rows, const std::string& model) {
  auto med = median_queries_by_n(rows);
  if (med.size() < 3) throw InvalidConfig("fit_scaling: need >= 3 distinct n");

  // log-log slope
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, q] : med) {
    double lx = std::log(static_cast<double>(n)), ly = std::log(std::max(q, 1.0));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  auto len = static_cast<double>(med.size());
  double slope = (len * sxy - sx * sy) / (len * sxx - sx * sx);

  auto fit_one = [&](const std::string& m) {
    double num = 0, den = 0;
    for (auto [n, q] : med) {
      double mv = model_value(m, n);
      num += mv * q;
      den += mv * mv;
    }
    double c = num / den;
    double ss = 0, mean = 0;
    for (auto [n, q] : med) {
      double e = q - c * model_value(m, n);
      ss += e * e;
      mean += q;
    }
    mean /= len;
    return std::pair<double, double>{c, std::sqrt(ss / len) / mean};
  };

  FitResult out;
  out.loglog_slope = slope;
  if (model == "auto") {
    double best = std::numeric_limits<double>::infinity();
    for (const char* m : {"n", "nlogn", "n2", "n92"}) {
      auto [c, resid] = fit_one(m);
      if (resid < best) {
        best = resid;
        out.model = m;
        out.coefficient = c;
        out.residual = resid;
      }
    }
  } else {
    auto [c, resid] = fit_one(model);
    out.model = model;
    out.coefficient = c;
    out.residual = resid;
  }
  return out;
}

// ---------- JSON ----------

std::string record_to_json(const RunRecord& r) {
  nlohmann::json j{{"algorithm", r.algorithm},
                   {"function", r.ell == 0 ? "onemax" : "jump"},
                   {"n", r.n},
                   {"ell", r.ell},
                   {"arity", r.arity},
                   {"seed", r.seed},
                   {"queries", r.queries},
                   {"success", r.success},
                   {"restarts", r.restarts},
                   {"wall_ms", r.wall_ms}};
  return j.dump();
}

SweepConfig sweep_config_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidConfig(std::string("sweep config: ") + e.what());
  }
  SweepConfig cfg;
  try {
    cfg.algorithm = j.at("algorithm").get<std::string>();
    cfg.n_values = j.at("n_values").get<std::vector<int>>();
    const auto& er = j.at("ell_rule");
    std::string rule = er.at("rule").get<std::string>();
    if (rule == "fixed") {
      cfg.ell_rule = EllRule::fixed(er.at("value").get<int>());
    } else if (rule == "short") {
      cfg.ell_rule.kind = EllRule::Kind::Short;
      cfg.ell_rule.eps = er.value("eps", 0.25);
    } else if (rule == "long") {
      cfg.ell_rule.kind = EllRule::Kind::Long;
      cfg.ell_rule.eps = er.value("eps", 0.25);
    } else if (rule == "extreme") {
      cfg.ell_rule.kind = EllRule::Kind::Extreme;
    } else {
      throw InvalidConfig("sweep config: unknown ell rule " + rule);
    }
    cfg.reps = j.value("reps", 10);
    cfg.base_seed = j.value("base_seed", uint64_t{1});
    if (j.contains("budget_rule")) cfg.budget_rule = j["budget_rule"].get<std::string>();
    if (j.contains("attempt_rule")) cfg.attempt_rule = j["attempt_rule"].get<std::string>();
    cfg.solver = j.value("solver", std::string("rls"));
    cfg.known_ell = j.value("known_ell", false);
    if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
    if (j.contains("c")) cfg.c = j["c"].get<double>();
    cfg.K = j.value("K", 4.0);
    cfg.K_T = j.value("K_T", 24.0);
    cfg.fast_engine = j.value("fast_engine", false);
    cfg.threads = j.value("threads", 0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("sweep config: ") + e.what());
  }
  return cfg;
}

}  // namespace jumplab
