// gjb — goodness-of-fit tests built on high-order moment coefficients.
//
//   fit       run tests on a CSV sample against a model
//   simulate  replication protocol: power / calibration studies
//   table     reproduce the reference model and simulation tables
//   moments   print a model's raw/central moments and (b_p, a_p)
//   coeffs    print chi-square coefficients and the k-th order variance
//
// Exit codes: 0 success, 2 usage/input error, 1 computation failure.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gjb/csv.hpp"
#include "gjb/errors.hpp"
#include "gjb/families.hpp"
#include "gjb/influence.hpp"
#include "gjb/model_spec.hpp"
#include "gjb/moments.hpp"
#include "gjb/simulate.hpp"
#include "gjb/stats.hpp"
#include "gjb/table.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  int k = 3;
  std::string family = "square";
  std::string variance = "exact";
  std::string tail = "two";
  bool as_json = false;
};

gjb::VarianceSource variance_of(const std::string& s) {
  return s == "plugin" ? gjb::VarianceSource::plugin
                       : gjb::VarianceSource::exact;
}

gjb::TailConvention tail_of(const std::string& s) {
  return s == "one" ? gjb::TailConvention::one_sided_abs
                    : gjb::TailConvention::two_sided_abs;
}

// ---------------------------------------------------------------- fit

int run_fit(const std::string& data_path, const std::string& model_text,
            const std::vector<std::string>& test_texts, const CommonOpts& c) {
  gjb::Sample sample = gjb::load_csv(data_path);
  gjb::MomentModel model = gjb::parse_model(model_text);
  gjb::FunctionFamily family = gjb::parse_family(c.family);

  std::vector<gjb::TestSelector> selectors;
  for (const std::string& t : test_texts) {
    selectors.push_back(gjb::parse_test_selector(t));
  }
  if (selectors.empty()) selectors.push_back({gjb::TestKind::general, 0});

  std::vector<gjb::TestReport> reports;
  for (const gjb::TestSelector& sel : selectors) {
    switch (sel.kind) {
      case gjb::TestKind::general:
        reports.push_back(gjb::general_test(sample, model, family, c.k,
                                            variance_of(c.variance),
                                            tail_of(c.tail)));
        break;
      case gjb::TestKind::chi2_symmetric:
        reports.push_back(gjb::chi2_symmetric(sample, model, sel.order));
        break;
      case gjb::TestKind::chi2_general:
        reports.push_back(gjb::chi2_general(sample, model, sel.order));
        break;
      case gjb::TestKind::classical_jb:
        reports.push_back(gjb::classical_jb(sample));
        break;
      case gjb::TestKind::ks:
        reports.push_back(gjb::ks_test(sample, model));
        break;
    }
  }

  if (c.as_json) {
    json doc;
    json cfg;
    cfg["command"] = "fit";
    cfg["data"] = data_path;
    cfg["n"] = sample.n();
    cfg["model"] = model.name();
    cfg["k"] = c.k;
    cfg["family"] = family.name();
    cfg["variance"] = c.variance == "plugin" ? "plugin" : "exact";
    cfg["tail"] = gjb::to_string(tail_of(c.tail));
    json tests = json::array();
    for (const auto& sel : selectors) {
      tests.push_back(gjb::selector_label(sel, c.k));
    }
    cfg["tests"] = tests;
    doc["config"] = cfg;
    json results = json::array();
    std::vector<std::string> warnings;
    for (const auto& r : reports) {
      results.push_back(json::parse(gjb::report_json(r)));
      for (const auto& w : r.warnings) {
        bool seen = false;
        for (const auto& have : warnings) seen = seen || have == w;
        if (!seen) warnings.push_back(w);
      }
    }
    doc["results"] = results;
    doc["warnings"] = warnings;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "fit: " << data_path << " (n = " << sample.n()
              << ") against " << model.name() << "\n";
    for (const auto& r : reports) {
      std::cout << "\n" << gjb::report_text(r);
    }
  }
  return 0;
}

// ----------------------------------------------------------- simulate

int run_simulate(const std::string& true_text, const std::string& null_text,
                 int n, int B, std::uint64_t seed, int threads,
                 const std::vector<std::string>& test_texts,
                 const CommonOpts& c) {
  gjb::SimulationConfig cfg{gjb::parse_model(true_text),
                            gjb::parse_model(null_text)};
  cfg.family = gjb::parse_family(c.family);
  cfg.k = c.k;
  cfg.n = n;
  cfg.B = B;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.variance = variance_of(c.variance);
  cfg.tail = tail_of(c.tail);
  cfg.tests.clear();
  for (const std::string& t : test_texts) {
    cfg.tests.push_back(gjb::parse_test_selector(t));
  }
  if (cfg.tests.empty()) cfg.tests.push_back({gjb::TestKind::general, 0});

  gjb::SimulationResult res = gjb::run_replications(cfg);
  if (c.as_json) {
    std::cout << gjb::simulation_json(cfg, res) << "\n";
  } else {
    std::cout << gjb::simulation_text(cfg, res);
  }
  return 0;
}

// -------------------------------------------------------------- table

int run_table(const std::string& id, double scale, int B, std::uint64_t seed,
              bool as_json) {
  gjb::TableOptions opt;
  opt.scale = scale;
  opt.B = B;
  opt.seed = seed;
  if (as_json) {
    std::cout << gjb::reproduce_table_json(id, opt) << "\n";
  } else {
    std::cout << gjb::reproduce_table(id, opt);
  }
  return 0;
}

// ------------------------------------------------------------ moments

int run_moments(const std::string& model_text, const std::string& data_path,
                const CommonOpts& c) {
  gjb::MomentModel model = [&] {
    if (!data_path.empty()) {
      return gjb::empirical_moments(gjb::load_csv(data_path),
                                    gjb::kDefaultMomentOrder,
                                    "empirical:" + data_path);
    }
    return gjb::parse_model(model_text);
  }();
  int top = 4 * c.k + 2;
  if (top > model.max_order()) top = model.max_order();
  if (c.as_json) {
    json doc;
    doc["config"] = {{"command", "moments"},
                     {"model", model.name()},
                     {"k", c.k}};
    json raw = json::array(), central = json::array();
    for (int ell = 0; ell <= top; ++ell) {
      raw.push_back(model.raw_moment(ell));
      central.push_back(model.central_moment(ell));
    }
    json ncem = json::array();
    for (int p = 2; p <= c.k; ++p) {
      gjb::NcemPair pair = gjb::theoretical_ncem(model, p);
      ncem.push_back({{"p", p}, {"b", pair.b}, {"a", pair.a}});
    }
    doc["results"] = {{"model", model.name()},
                      {"max_order", model.max_order()},
                      {"mean", model.mean()},
                      {"sigma2", model.sigma2()},
                      {"symmetric", model.symmetric()},
                      {"raw", raw},
                      {"central", central},
                      {"ncem", ncem}};
    doc["warnings"] = json::array();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "model: " << model.name()
              << "  (orders carried: " << model.max_order() << ")\n";
    std::cout << "mean = " << model.mean() << ", variance = " << model.sigma2()
              << ", symmetric = " << (model.symmetric() ? "yes" : "no")
              << "\n\n";
    std::cout << "  ell            raw               central\n";
    std::cout.precision(12);
    for (int ell = 0; ell <= top; ++ell) {
      std::cout << "  " << ell << "\t" << model.raw_moment(ell) << "\t"
                << model.central_moment(ell) << "\n";
    }
    std::cout << "\n  (b_p, a_p):\n";
    for (int p = 2; p <= c.k; ++p) {
      gjb::NcemPair pair = gjb::theoretical_ncem(model, p);
      std::cout << "  p=" << p << ": (" << pair.b << ", " << pair.a << ")\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------- coeffs

int run_coeffs(const std::string& model_text, const CommonOpts& c) {
  gjb::MomentModel model = gjb::parse_model(model_text);
  gjb::FunctionFamily family = gjb::parse_family(c.family);
  gjb::InfluenceSet set = gjb::build_D(c.k, family, model);
  double T = gjb::exact_T(family, c.k, model);
  if (c.as_json) {
    json doc;
    doc["config"] = {{"command", "coeffs"},
                     {"model", model.name()},
                     {"k", c.k},
                     {"family", family.name()}};
    json per_p = json::array();
    for (int p = 2; p <= c.k; ++p) {
      gjb::ChiSquareCoeffs cs = gjb::jb_coefficients(p, model);
      gjb::NcemPair pair = gjb::theoretical_ncem(model, p);
      per_p.push_back({{"p", p},
                       {"b", pair.b},
                       {"a", pair.a},
                       {"bj", cs.bj},
                       {"aj", cs.aj},
                       {"abj", cs.abj},
                       {"delta", cs.delta}});
    }
    doc["results"] = {{"per_p", per_p},
                      {"T", T},
                      {"sigma2", set.sigma2},
                      {"sigma", std::sqrt(set.sigma2)}};
    doc["warnings"] = json::array();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "model: " << model.name() << ", family: " << family.name()
              << ", k = " << c.k << "\n\n";
    std::cout.precision(12);
    for (int p = 2; p <= c.k; ++p) {
      gjb::ChiSquareCoeffs cs = gjb::jb_coefficients(p, model);
      gjb::NcemPair pair = gjb::theoretical_ncem(model, p);
      std::cout << "p=" << p << ": b=" << pair.b << " a=" << pair.a
                << "  bj=" << cs.bj << " aj=" << cs.aj << " abj=" << cs.abj
                << " delta=" << cs.delta << "\n";
    }
    std::cout << "\nT      = " << T << "\n";
    std::cout << "sigma2 = " << set.sigma2 << "\n";
    std::cout << "sigma  = " << std::sqrt(set.sigma2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-moment goodness-of-fit tests"};
  app.require_subcommand(1);

  CommonOpts c;

  // fit
  std::string data_path, model_text;
  std::vector<std::string> fit_tests;
  CLI::App* fit = app.add_subcommand("fit", "test a CSV sample against a model");
  fit->add_option("--data", data_path, "CSV file, one value per line")
      ->required();
  fit->add_option("--model", model_text,
                  "normal:m,sigma | dexp:lambda | dgamma:a,b | empirical:path")
      ->required();
  fit->add_option("--k", c.k, "highest moment order p in the sum (default 3)");
  fit->add_option("--family", c.family, "square | theta:<theta>,<even p>");
  fit->add_option("--test", fit_tests,
                  "general | chi2sym:p | chi2gen:p | jb | ks (repeatable)");
  fit->add_option("--variance", c.variance, "exact | plugin")
      ->check(CLI::IsMember({"exact", "plugin"}));
  fit->add_option("--tail", c.tail, "two | one (p-value convention)")
      ->check(CLI::IsMember({"two", "one"}));
  fit->add_flag("--json", c.as_json, "emit one JSON document");

  // simulate
  std::string true_text, null_text;
  std::vector<std::string> sim_tests;
  int n = 100, B = 1000, threads = 1;
  std::uint64_t seed = 1;
  CLI::App* sim = app.add_subcommand("simulate",
                                     "replication study: power / calibration");
  sim->add_option("--true", true_text, "data-generating model")->required();
  sim->add_option("--null", null_text, "model under test")->required();
  sim->add_option("--k", c.k, "highest moment order (default 3)");
  sim->add_option("--family", c.family, "square | theta:<theta>,<even p>");
  sim->add_option("--test", sim_tests,
                  "general | chi2sym:p | chi2gen:p | jb | ks (repeatable)");
  sim->add_option("--n", n, "sample size per replication (default 100)");
  sim->add_option("--B", B, "replication count (default 1000)");
  sim->add_option("--seed", seed, "master seed (default 1)");
  sim->add_option("--threads", threads,
                  "worker threads; results identical for any value");
  sim->add_option("--variance", c.variance, "exact | plugin")
      ->check(CLI::IsMember({"exact", "plugin"}));
  sim->add_option("--tail", c.tail, "two | one (p-value convention)")
      ->check(CLI::IsMember({"two", "one"}));
  sim->add_flag("--json", c.as_json, "emit one JSON document");

  // table
  std::string table_id;
  double scale = 1.0;
  CLI::App* table = app.add_subcommand("table",
                                       "reproduce a reference table");
  table
      ->add_option("id", table_id,
                   "normal-params | dexp-params | normal-sim | dexp-vs-normal "
                   "| dgamma-vs-normal | dexp-sim")
      ->required();
  table->add_option("--scale", scale, "multiply the reference sample sizes");
  table->add_option("--B", B, "replication count (default 1000)");
  table->add_option("--seed", seed, "master seed (default 1)");
  table->add_flag("--json", c.as_json, "emit one JSON document");

  // moments
  std::string mom_model, mom_data;
  CLI::App* mom = app.add_subcommand("moments",
                                     "print raw/central moments and (b_p, a_p)");
  mom->add_option("--model", mom_model, "parametric model spec");
  mom->add_option("--data", mom_data, "CSV file (empirical moments)");
  mom->add_option("--k", c.k, "report (b_p, a_p) for p = 2..k");
  mom->add_flag("--json", c.as_json, "emit one JSON document");

  // coeffs
  std::string cf_model;
  CLI::App* cf = app.add_subcommand(
      "coeffs", "chi-square coefficients, T and the order-k variance");
  cf->add_option("--model", cf_model, "model spec")->required();
  cf->add_option("--k", c.k, "highest moment order (default 3)");
  cf->add_option("--family", c.family, "square | theta:<theta>,<even p>");
  cf->add_flag("--json", c.as_json, "emit one JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors always exit 2
  }

  try {
    if (fit->parsed()) return run_fit(data_path, model_text, fit_tests, c);
    if (sim->parsed()) {
      return run_simulate(true_text, null_text, n, B, seed, threads, sim_tests,
                          c);
    }
    if (table->parsed()) return run_table(table_id, scale, B, seed, c.as_json);
    if (mom->parsed()) {
      if (mom_model.empty() && mom_data.empty()) {
        std::cerr << "error: moments needs --model or --data\n";
        return 2;
      }
      return run_moments(mom_model, mom_data, c);
    }
    if (cf->parsed()) return run_coeffs(cf_model, c);
  } catch (const gjb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
