#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "jumplab/harness.hpp"
#include "jumplab/verify.hpp"

using namespace jumplab;

TEST_CASE("budget expressions") {
  CHECK(eval_budget_expr("20*n*log(n)", 64.0) == doctest::Approx(20 * 64 * std::log(64.0)));
  CHECK(eval_budget_expr("n^4.5", 16.0) == doctest::Approx(std::pow(16.0, 4.5)));
  CHECK(eval_budget_expr("32*n*log2(n)+320", 8.0) == doctest::Approx(32 * 8 * 3 + 320));
  CHECK(eval_budget_expr("(n+2)*sqrt(n)", 16.0) == doctest::Approx(18 * 4));
  CHECK(eval_budget_expr("1e3", 5.0) == doctest::Approx(1000.0));
  CHECK_THROWS_AS(eval_budget_expr("n*", 4.0), InvalidConfig);
  CHECK_THROWS_AS(eval_budget_expr("foo(n)", 4.0), InvalidConfig);
}

TEST_CASE("run_single is deterministic and audited") {
  RunConfig rc;
  rc.algorithm = "extreme-ternary";
  rc.n = 100;
  rc.seed = 12;
  RunAudit a1, a2;
  RunRecord r1 = run_single(rc, &a1);
  RunRecord r2 = run_single(rc, &a2);
  CHECK(r1.queries == r2.queries);
  CHECK(r1.success == r2.success);
  CHECK(r1.restarts == r2.restarts);
  CHECK(r1.success);
  CHECK(r1.queries <= 600);  // <= 6n
  CHECK(r1.arity == 3);
  CHECK(a1.first_hit == a2.first_hit);
  CHECK(r1.queries == *a1.first_hit);
}

TEST_CASE("a budget of one query yields an honest failure record") {
  RunConfig rc;
  rc.algorithm = "rls";
  rc.n = 32;
  rc.seed = 5;
  rc.budget_rule = "1";
  rc.attempt_rule = "1";
  RunRecord rec = run_single(rc);
  CHECK(!rec.success);
  CHECK(rec.queries == 1);
}

TEST_CASE("invalid configurations are rejected") {
  RunConfig rc;
  rc.algorithm = "simulated-annealing";
  rc.n = 32;
  CHECK_THROWS_AS(run_single(rc), InvalidConfig);
  rc.algorithm = "extreme-ternary";
  rc.n = 33;
  CHECK_THROWS_AS(run_single(rc), InvalidConfig);
  rc.n = 32;
  rc.ell = 3;
  CHECK_THROWS_AS(run_single(rc), InvalidConfig);  // extreme needs ell = n/2 - 1
  RunConfig rf;
  rf.algorithm = "extreme-binary";
  rf.n = 32;
  rf.fast_engine = true;  // pair algorithms have no weight-space twin
  CHECK_THROWS_AS(run_single(rf), InvalidConfig);
}

TEST_CASE("sweep row counts, reproducibility and aggregation") {
  SweepConfig sc;
  sc.algorithm = "rls";
  sc.n_values = {64, 128};
  sc.ell_rule = EllRule::fixed(0);
  sc.reps = 10;
  sc.base_seed = 99;
  auto rows = sweep(sc);
  REQUIRE(rows.size() == 20);

  // re-run a single row from its derived stream
  RunConfig rc;
  rc.algorithm = "rls";
  rc.n = rows[13].n;
  rc.ell = 0;
  rc.seed = rows[13].seed;
  RunRecord again = run_single(rc);
  CHECK(again.queries == rows[13].queries);
  CHECK(again.success == rows[13].success);

  long ok = 0;
  for (const auto& r : rows) ok += r.success;
  CHECK(ok == 20);
}

TEST_CASE("sweep rejects incompatible (n, ell) pairs up front") {
  SweepConfig sc;
  sc.algorithm = "extreme-ternary";
  sc.n_values = {50, 101};  // odd n cannot host an extreme objective
  sc.ell_rule.kind = EllRule::Kind::Extreme;
  sc.reps = 2;
  CHECK_THROWS_AS(sweep(sc), InvalidConfig);
  SweepConfig lc;
  lc.algorithm = "longjump-unary";
  lc.n_values = {30};
  lc.ell_rule = EllRule::fixed(14);  // n/2 - 1: extreme, not long
  lc.reps = 1;
  CHECK_THROWS_AS(sweep(lc), InvalidConfig);
}

TEST_CASE("parallel sweep equals sequential sweep") {
  SweepConfig sc;
  sc.algorithm = "extreme-ternary";
  sc.n_values = {50, 100};
  sc.ell_rule.kind = EllRule::Kind::Extreme;
  sc.reps = 8;
  sc.base_seed = 7;
  sc.threads = 1;
  auto seq = sweep(sc);
  sc.threads = 2;
  auto par = sweep(sc);
  REQUIRE(seq.size() == par.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].queries == par[i].queries);
    CHECK(seq[i].seed == par[i].seed);
    CHECK(seq[i].success == par[i].success);
    CHECK(seq[i].restarts == par[i].restarts);
  }
}

TEST_CASE("csv round trip") {
  SweepConfig sc;
  sc.algorithm = "rls";
  sc.n_values = {32};
  sc.ell_rule = EllRule::fixed(0);
  sc.reps = 5;
  sc.base_seed = 3;
  auto rows = sweep(sc);
  std::stringstream ss;
  write_csv(ss, rows);
  auto parsed = read_csv(ss);
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].algorithm == rows[i].algorithm);
    CHECK(parsed[i].n == rows[i].n);
    CHECK(parsed[i].ell == rows[i].ell);
    CHECK(parsed[i].arity == rows[i].arity);
    CHECK(parsed[i].seed == rows[i].seed);
    CHECK(parsed[i].queries == rows[i].queries);
    CHECK(parsed[i].success == rows[i].success);
    CHECK(parsed[i].restarts == rows[i].restarts);
    CHECK(parsed[i].wall_ms == rows[i].wall_ms);
  }
  std::stringstream bad("not,a,header\n");
  CHECK_THROWS_AS(read_csv(bad), InvalidConfig);
}

TEST_CASE("scaling fits on synthetic data") {
  auto synth = [](const std::function<double(double)>& f) {
    std::vector<RunRecord> rows;
    for (int n : {32, 64, 128, 256}) {
      for (int rep = 0; rep < 3; ++rep) {
        RunRecord r;
        r.algorithm = "synthetic";
        r.n = n;
        r.queries = static_cast<uint64_t>(std::llround(f(n)));
        r.success = true;
        rows.push_back(r);
      }
    }
    return rows;
  };
  auto nlogn = fit_scaling(synth([](double n) { return 7.0 * n * std::log(n); }));
  CHECK(nlogn.model == "nlogn");
  CHECK(nlogn.coefficient == doctest::Approx(7.0).epsilon(1e-4));
  CHECK(nlogn.residual < 1e-4);  // floor set by rounding queries to integers

  auto quad = fit_scaling(synth([](double n) { return n * n; }));  // integer-exact
  CHECK(quad.model == "n2");
  CHECK(quad.residual < 1e-6);
  CHECK(quad.loglog_slope == doctest::Approx(2.0).epsilon(0.005));

  std::vector<RunRecord> degenerate;
  RunRecord r;
  r.n = 8;
  r.queries = 10;
  r.success = true;
  degenerate.push_back(r);
  CHECK_THROWS_AS(fit_scaling(degenerate), InvalidConfig);
}

TEST_CASE("ell rules") {
  CHECK(EllRule::fixed(5).ell_for(100) == 5);
  EllRule shortr{EllRule::Kind::Short, 0, 0.25};
  CHECK(shortr.ell_for(256) == 4);  // floor(256^0.25)
  EllRule longr{EllRule::Kind::Long, 0, 0.25};
  CHECK(longr.ell_for(100) == 25);
  EllRule ext{EllRule::Kind::Extreme, 0, 0.0};
  CHECK(ext.ell_for(64) == 31);
}

TEST_CASE("sweep config json parsing") {
  auto cfg = sweep_config_from_json_text(R"json({
    "algorithm": "longjump-ternary",
    "n_values": [64, 128],
    "ell_rule": {"rule": "long", "eps": 0.25},
    "reps": 9,
    "base_seed": 41,
    "budget_rule": "40*n*log(n)",
    "threads": 2
  })json");
  CHECK(cfg.algorithm == "longjump-ternary");
  CHECK(cfg.n_values == std::vector<int>{64, 128});
  CHECK(cfg.ell_rule.ell_for(64) == 16);
  CHECK(cfg.reps == 9);
  CHECK(cfg.base_seed == 41);
  CHECK(cfg.budget_rule == "40*n*log(n)");
  CHECK_THROWS_AS(sweep_config_from_json_text("{"), InvalidConfig);
  CHECK_THROWS_AS(sweep_config_from_json_text(R"json({"algorithm": "rls"})json"), InvalidConfig);
}

TEST_CASE("json record shape") {
  RunRecord r;
  r.algorithm = "rls";
  r.n = 8;
  r.ell = 0;
  r.arity = 1;
  r.seed = 4;
  r.queries = 17;
  r.success = true;
  r.restarts = 0;
  r.wall_ms = 2;
  std::string j = record_to_json(r);
  CHECK(j.find("\"algorithm\":\"rls\"") != std::string::npos);
  CHECK(j.find("\"function\":\"onemax\"") != std::string::npos);
  CHECK(j.find("\"queries\":17") != std::string::npos);
}

TEST_CASE("short jump exposes eps and c knobs") {
  RunConfig rc;
  rc.algorithm = "shortjump-unary";
  rc.n = 64;
  rc.ell = 2;
  rc.seed = 9;
  rc.eps = 0.25;
  rc.c = 2.0;
  RunRecord rec = run_single(rc);
  CHECK(rec.success);
}

TEST_CASE("unknown verify suite is rejected") {
  std::stringstream out;
  CHECK_THROWS_AS(run_suite("everything", out), InvalidConfig);
}
