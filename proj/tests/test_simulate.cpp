#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "gjb/errors.hpp"
#include "gjb/simulate.hpp"

using gjb::parse_test_selector;
using gjb::SimulationConfig;
using gjb::TestKind;
using gjb::TestSelector;

namespace {

SimulationConfig base_config() {
  SimulationConfig cfg{gjb::normal_moments(0.0, 1.0),
                       gjb::normal_moments(0.0, 1.0)};
  cfg.k = 3;
  cfg.n = 100;
  cfg.B = 50;
  cfg.seed = 4242;
  return cfg;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("selector grammar: every spelling and its label") {
  CHECK(parse_test_selector("general").kind == TestKind::general);
  CHECK(parse_test_selector("jb").kind == TestKind::classical_jb);
  CHECK(parse_test_selector("classical_jb").kind == TestKind::classical_jb);
  CHECK(parse_test_selector("ks").kind == TestKind::ks);
  TestSelector sym = parse_test_selector("chi2sym:2");
  CHECK(sym.kind == TestKind::chi2_symmetric);
  CHECK(sym.order == 2);
  TestSelector gen = parse_test_selector("chi2gen:4");
  CHECK(gen.kind == TestKind::chi2_general);
  CHECK(gen.order == 4);

  CHECK(gjb::selector_label({TestKind::general, 0}, 3) == "general(k=3)");
  CHECK(gjb::selector_label(sym, 3) == "chi2sym(p=2)");
  CHECK(gjb::selector_label(gen, 3) == "chi2gen(p=4)");
  CHECK(gjb::selector_label({TestKind::classical_jb, 0}, 3) == "jb");
  CHECK(gjb::selector_label({TestKind::ks, 0}, 3) == "ks");

  CHECK_THROWS_AS(parse_test_selector("chi2sym:1"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector("chi2sym:"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector("chi2sym:two"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector("chi2sym:2x"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector("chi2sym"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector("anderson"), gjb::InvalidParam);
  CHECK_THROWS_AS(parse_test_selector(""), gjb::InvalidParam);
}

TEST_CASE("determinism: equal seeds give byte-equal reports") {
  SimulationConfig cfg = base_config();
  cfg.B = 40;
  cfg.tests = {parse_test_selector("general"), parse_test_selector("jb"),
               parse_test_selector("ks")};
  auto r1 = gjb::run_replications(cfg);
  auto r2 = gjb::run_replications(cfg);
  CHECK(gjb::simulation_json(cfg, r1) == gjb::simulation_json(cfg, r2));

  SimulationConfig other = cfg;
  other.seed = cfg.seed + 1;
  auto r3 = gjb::run_replications(other);
  CHECK(gjb::simulation_json(cfg, r1) != gjb::simulation_json(other, r3));
}

TEST_CASE("thread count never changes the result") {
  SimulationConfig cfg = base_config();
  cfg.B = 60;
  cfg.n = 80;
  cfg.tests = {parse_test_selector("general"), parse_test_selector("chi2sym:2")};
  auto serial = gjb::run_replications(cfg);
  std::string serial_json = gjb::simulation_json(cfg, serial);
  for (int threads : {2, 3, 7}) {
    SimulationConfig mt = cfg;
    mt.threads = threads;
    auto parallel = gjb::run_replications(mt);
    // The config echo excludes the thread count, so byte equality holds.
    CHECK(gjb::simulation_json(mt, parallel) == serial_json);
  }
}

TEST_CASE("null calibration: t* is near standard normal, rejection ~5%") {
  SimulationConfig cfg = base_config();
  cfg.n = 1000;
  cfg.B = 2000;
  cfg.seed = 1849;
  cfg.tests = {parse_test_selector("general")};
  auto res = gjb::run_replications(cfg);
  REQUIRE(res.per_test.size() == 1);
  const auto& agg = res.per_test[0];
  CHECK(agg.test == "general(k=3)");
  CHECK(agg.kind == "general_normal");
  // At n = 1000 the k = 3 normal test is close to its limit law:
  // mean within +-0.1, spread within [0.85, 1.15], rejection in [3.5, 6.5]%.
  CHECK(std::abs(agg.mean_standardized) < 0.1);
  CHECK(agg.stddev_standardized > 0.85);
  CHECK(agg.stddev_standardized < 1.15);
  CHECK(agg.rejection_rate_5pct > 0.035);
  CHECK(agg.rejection_rate_5pct < 0.065);
}

TEST_CASE("power: chi2sym(2) separates dexp data from the normal null") {
  SimulationConfig cfg{gjb::laplace_moments(1.0), gjb::normal_moments(0.0, 1.0)};
  cfg.n = 100;
  cfg.B = 1000;
  cfg.seed = 7;
  cfg.tests = {parse_test_selector("chi2sym:2"), parse_test_selector("jb")};
  auto res = gjb::run_replications(cfg);
  REQUIRE(res.per_test.size() == 2);
  // Kurtosis 6 vs 3 at n = 100: comfortably detectable most of the time.
  CHECK(res.per_test[0].rejection_rate_5pct > 0.60);
  // jb and chi2sym:2 against N(0,1) are the same statistic.
  CHECK(res.per_test[0].mean_statistic ==
        doctest::Approx(res.per_test[1].mean_statistic).epsilon(1e-12));
  CHECK(res.per_test[0].rejection_rate_5pct ==
        doctest::Approx(res.per_test[1].rejection_rate_5pct));
}

TEST_CASE("bad configurations fail before any sampling") {
  SimulationConfig cfg = base_config();
  cfg.B = 0;
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::InvalidParam);

  cfg = base_config();
  cfg.tests.clear();
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::InvalidParam);

  // Sample size below the hard floor for the requested order.
  cfg = base_config();
  cfg.n = 7;
  cfg.tests = {parse_test_selector("jb")};
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::DegenerateSample);

  // k = 3 needs n >= 12 under the default policy, 8 when relaxed.
  cfg = base_config();
  cfg.n = 11;
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::DegenerateSample);
  cfg.policy.order_factor = 2;
  cfg.B = 5;
  auto res = gjb::run_replications(cfg);
  bool warned = false;
  for (const auto& w : res.warnings) {
    if (w.find("small sample") != std::string::npos) warned = true;
  }
  CHECK(warned);

  // chi2sym against an asymmetric null is rejected up front.
  std::vector<double> skew;
  for (int i = 0; i < 100; ++i) skew.push_back((i % 10) * (i % 10));
  cfg = base_config();
  cfg.model_null = gjb::empirical_moments(gjb::Sample(std::move(skew)), 12);
  cfg.tests = {parse_test_selector("chi2sym:2")};
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::NotSymmetric);

  // ks needs a CDF; an empirical true model cannot be sampled.
  cfg = base_config();
  std::vector<double> pts;
  for (int i = 0; i < 60; ++i) pts.push_back(std::sin(3.7 * i));
  cfg.model_null = gjb::empirical_moments(gjb::Sample(pts), 12);
  cfg.tests = {parse_test_selector("ks")};
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::NoCdf);

  cfg = base_config();
  cfg.model_true = gjb::empirical_moments(gjb::Sample(pts), 12);
  cfg.tests = {parse_test_selector("jb")};
  CHECK_THROWS_AS(gjb::run_replications(cfg), gjb::NotSampleable);
}

TEST_CASE("json document carries config echo and per-test aggregates") {
  SimulationConfig cfg = base_config();
  cfg.B = 10;
  cfg.tests = {parse_test_selector("general"), parse_test_selector("ks")};
  auto res = gjb::run_replications(cfg);
  std::string js = gjb::simulation_json(cfg, res);
  CHECK(js.find("\"command\"") != std::string::npos);
  CHECK(js.find("\"simulate\"") != std::string::npos);
  CHECK(js.find("\"seed\"") != std::string::npos);
  CHECK(js.find("general(k=3)") != std::string::npos);
  CHECK(js.find("\"rejection_rate_5pct\"") != std::string::npos);
  std::string txt = gjb::simulation_text(cfg, res);
  CHECK(txt.find("general(k=3)") != std::string::npos);
  CHECK(txt.find("ks") != std::string::npos);
}

}  // TEST_SUITE
