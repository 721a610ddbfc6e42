#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gjb/families.hpp"
#include "gjb/moments.hpp"
#include "gjb/stats.hpp"

namespace gjb {

enum class TestKind { general, chi2_symmetric, chi2_general, classical_jb, ks };

// One requested test; order is k for the general test, p for the
// chi-square tests, unused otherwise.
struct TestSelector {
  TestKind kind = TestKind::general;
  int order = 0;
};

// Parses the CLI test grammar: general | chi2sym:p | chi2gen:p | jb | ks.
TestSelector parse_test_selector(const std::string& text);
std::string selector_label(const TestSelector& sel, int k);

// Replication protocol: draw B samples of size n from model_true, evaluate
// every selected test against model_null, aggregate.
struct SimulationConfig {
  MomentModel model_true;
  MomentModel model_null;
  FunctionFamily family = FunctionFamily::square();
  int k = 3;
  int n = 100;
  int B = 1000;
  std::uint64_t seed = 1;
  std::vector<TestSelector> tests = {{TestKind::general, 0}};
  VarianceSource variance = VarianceSource::exact;
  TailConvention tail = TailConvention::two_sided_abs;
  TestPolicy policy{};
  // Worker threads; aggregation order is by replication index regardless,
  // so results are identical for any thread count.
  int threads = 1;
};

struct TestAggregate {
  std::string test;  // label, e.g. "general(k=3)" or "chi2sym(p=2)"
  std::string kind;  // TestReport kind string
  double mean_statistic = 0.0;
  double stddev_statistic = 0.0;
  double mean_standardized = 0.0;
  double stddev_standardized = 0.0;
  // p-value of the mean standardized value (the protocol reports the mean
  // t* and its p, not the mean of per-replication p-values).
  double p_of_mean = 0.0;
  double rejection_rate_5pct = 0.0;
};

struct SimulationResult {
  std::vector<TestAggregate> per_test;
  std::vector<std::string> warnings;
};

// Deterministic given (config, seed): replication i draws from substream
// (seed, i) and aggregation is an ordered reduction. A failing replication
// aborts with its index in the error message.
SimulationResult run_replications(const SimulationConfig& cfg);

// Full report document {config, results, warnings}.
std::string simulation_json(const SimulationConfig& cfg,
                            const SimulationResult& res);
std::string simulation_text(const SimulationConfig& cfg,
                            const SimulationResult& res);

}  // namespace gjb
