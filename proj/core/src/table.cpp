#include "gjb/table.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "gjb/errors.hpp"
#include "gjb/families.hpp"
#include "gjb/influence.hpp"
#include "gjb/model_spec.hpp"
#include "gjb/moments.hpp"
#include "gjb/simulate.hpp"
#include "json.hpp"

namespace gjb {

namespace {

// Shape a_0 = (1 + sqrt(13))/2 makes the double-gamma kurtosis exactly 3.
double dgamma_shape_kurt3() { return 0.5 * (1.0 + std::sqrt(13.0)); }

struct ParamTableSpec {
  std::string title;
  MomentModel model;
  double sigma_reference;  // published value, kept for side-by-side display
};

struct SimTableSpec {
  std::string title;
  MomentModel model_true;
  MomentModel model_null;
  std::vector<int> n_values;
  std::vector<TestSelector> tests;
};

constexpr int kTableOrderK = 3;

ParamTableSpec param_spec(const std::string& id) {
  if (id == "normal-params") {
    return {"standard normal model parameters", normal_moments(0.0, 1.0),
            500.2918};
  }
  return {"double-exponential(1) model parameters", laplace_moments(1.0),
          73473.0};
}

SimTableSpec sim_spec(const std::string& id) {
  std::vector<TestSelector> full = {{TestKind::general, 0},
                                    {TestKind::classical_jb, 0},
                                    {TestKind::ks, 0}};
  std::vector<TestSelector> bare = {{TestKind::general, 0}};
  if (id == "normal-sim") {
    return {"normal data against the normal model", normal_moments(0.0, 1.0),
            normal_moments(0.0, 1.0), {20, 100, 1000}, full};
  }
  if (id == "dexp-vs-normal") {
    return {"double-exponential(1) data against the normal model",
            laplace_moments(1.0), normal_moments(0.0, 1.0), {11, 22}, full};
  }
  if (id == "dgamma-vs-normal") {
    return {"double-gamma data (kurtosis 3) against the normal model",
            double_gamma_moments(dgamma_shape_kurt3(), 1.0),
            normal_moments(0.0, 1.0), {11, 22}, full};
  }
  // dexp-sim: double-exponential null, one general column, two data models.
  return {"data against the double-exponential(1) model", laplace_moments(1.0),
          laplace_moments(1.0), {800}, bare};
}

int scaled_n(int n, double scale) {
  double v = std::llround(static_cast<double>(n) * scale);
  return v < 2.0 ? 2 : static_cast<int>(v);
}

SimulationConfig make_config(const MomentModel& model_true,
                             const MomentModel& model_null, int n,
                             const std::vector<TestSelector>& tests,
                             const TableOptions& opt) {
  SimulationConfig cfg{model_true, model_null};
  cfg.k = kTableOrderK;
  cfg.n = n;
  cfg.B = opt.B;
  cfg.seed = opt.seed;
  cfg.tests = tests;
  cfg.tail = TailConvention::one_sided_abs;  // the published p% convention
  // The reference runs go down to n = 11 with k = 3; relax the order floor
  // (the absolute floor of 8 still applies) and let the small-sample
  // warning speak instead.
  cfg.policy.order_factor = 2;
  return cfg;
}

struct SimCell {
  int n = 0;
  SimulationResult result;
  std::string data_label;
};

std::vector<SimCell> run_sim_table(const std::string& id,
                                   const SimTableSpec& spec,
                                   const TableOptions& opt) {
  std::vector<SimCell> cells;
  if (id == "dexp-sim") {
    // Two data models against the same null: matched data at n=800,
    // normal data at n=1000 (where the mismatch becomes visible).
    struct Row {
      MomentModel model;
      int n;
    };
    std::vector<Row> rows = {{laplace_moments(1.0), 800},
                             {normal_moments(0.0, 1.0), 1000}};
    for (const Row& r : rows) {
      SimulationConfig cfg = make_config(r.model, spec.model_null,
                                         scaled_n(r.n, opt.scale), spec.tests,
                                         opt);
      SimCell cell;
      cell.n = cfg.n;
      cell.data_label = r.model.name();
      cell.result = run_replications(cfg);
      cells.push_back(std::move(cell));
    }
    return cells;
  }
  for (int n : spec.n_values) {
    SimulationConfig cfg = make_config(spec.model_true, spec.model_null,
                                       scaled_n(n, opt.scale), spec.tests, opt);
    SimCell cell;
    cell.n = cfg.n;
    cell.data_label = spec.model_true.name();
    cell.result = run_replications(cfg);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string format_real(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

// ---------- parameter tables ----------

std::string param_table_text(const ParamTableSpec& spec) {
  FunctionFamily fam = FunctionFamily::square();
  std::ostringstream os;
  os << spec.title << "\n";
  os << "  (b_p, a_p) for p = 2..6:\n";
  for (int p = 2; p <= 6; ++p) {
    NcemPair pair = theoretical_ncem(spec.model, p);
    os << "    p=" << p << ": (" << format_real(pair.b, 12) << ", "
       << format_real(pair.a, 12) << ")\n";
  }
  double T = exact_T(fam, kTableOrderK, spec.model);
  InfluenceSet set = build_D(kTableOrderK, fam, spec.model);
  double sigma = std::sqrt(set.sigma2);
  os << "  T(square, k=3)  = " << format_real(T, 12) << "\n";
  os << "  sigma (k=3)     = " << format_real(sigma, 10)
     << "   [reference: " << format_real(spec.sigma_reference, 10);
  bool match = std::abs(sigma - spec.sigma_reference) <=
               1e-3 * std::abs(spec.sigma_reference);
  os << (match ? "]" : "]  ** MISMATCH **") << "\n";
  if (!match) {
    os << "  note: sigma above evaluates the asymptotic-variance formula "
          "exactly from\n"
          "  the model moments and is validated by Monte Carlo; the "
          "reference value\n"
          "  could not be reproduced from the stated quantities.\n";
  }
  return os.str();
}

nlohmann::json param_table_json_obj(const ParamTableSpec& spec) {
  FunctionFamily fam = FunctionFamily::square();
  nlohmann::json rows = nlohmann::json::array();
  for (int p = 2; p <= 6; ++p) {
    NcemPair pair = theoretical_ncem(spec.model, p);
    rows.push_back({{"p", p}, {"b", pair.b}, {"a", pair.a}});
  }
  InfluenceSet set = build_D(kTableOrderK, fam, spec.model);
  double sigma = std::sqrt(set.sigma2);
  nlohmann::json j;
  j["model"] = spec.model.name();
  j["ncem"] = rows;
  j["T_square_k3"] = exact_T(fam, kTableOrderK, spec.model);
  j["sigma_computed"] = sigma;
  j["sigma_reference"] = spec.sigma_reference;
  j["sigma_matches_reference"] =
      std::abs(sigma - spec.sigma_reference) <=
      1e-3 * std::abs(spec.sigma_reference);
  return j;
}

// ---------- simulation tables ----------

const TestAggregate* find_aggregate(const SimulationResult& res,
                                    const std::string& kind) {
  for (const TestAggregate& a : res.per_test) {
    if (a.kind == kind) return &a;
  }
  return nullptr;
}

std::string sim_table_text(const std::string& id, const SimTableSpec& spec,
                           const TableOptions& opt) {
  std::vector<SimCell> cells = run_sim_table(id, spec, opt);
  bool full = spec.tests.size() > 1;
  std::ostringstream os;
  os << spec.title << "  (B = " << opt.B << ", seed = " << opt.seed
     << ", mean over replications)\n";
  os << std::left << std::setw(22) << "  data" << std::right << std::setw(7)
     << "n" << std::setw(12) << "T_n" << std::setw(10) << "t*" << std::setw(10)
     << "p%";
  if (full) {
    os << std::setw(10) << "JB" << std::setw(10) << "pJB%" << std::setw(10)
       << "KS" << std::setw(10) << "pKS%";
  }
  os << "\n";
  std::vector<std::string> warnings;
  for (const SimCell& cell : cells) {
    const TestAggregate* gen = find_aggregate(cell.result, "general_normal");
    os << std::left << std::setw(22) << ("  " + cell.data_label) << std::right
       << std::setw(7) << cell.n;
    os << std::setw(12) << format_real(gen->mean_statistic, 6)
       << std::setw(10) << format_real(gen->mean_standardized, 4)
       << std::setw(10) << format_real(100.0 * gen->p_of_mean, 4);
    if (full) {
      const TestAggregate* jb = find_aggregate(cell.result, "classical_jb");
      const TestAggregate* ks = find_aggregate(cell.result, "ks");
      os << std::setw(10) << format_real(jb->mean_statistic, 4)
         << std::setw(10) << format_real(100.0 * jb->p_of_mean, 4)
         << std::setw(10) << format_real(ks->mean_standardized, 4)
         << std::setw(10) << format_real(100.0 * ks->p_of_mean, 4);
    }
    os << "\n";
    for (const std::string& w : cell.result.warnings) {
      bool seen = false;
      for (const std::string& have : warnings) seen = seen || have == w;
      if (!seen) warnings.push_back(w);
    }
  }
  for (const std::string& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

nlohmann::json sim_table_json_obj(const std::string& id,
                                  const SimTableSpec& spec,
                                  const TableOptions& opt,
                                  std::vector<std::string>* warnings) {
  std::vector<SimCell> cells = run_sim_table(id, spec, opt);
  nlohmann::json rows = nlohmann::json::array();
  for (const SimCell& cell : cells) {
    nlohmann::json row;
    row["data"] = cell.data_label;
    row["null"] = spec.model_null.name();
    row["n"] = cell.n;
    nlohmann::json per_test = nlohmann::json::array();
    for (const TestAggregate& a : cell.result.per_test) {
      per_test.push_back({{"test", a.test},
                          {"kind", a.kind},
                          {"mean_statistic", a.mean_statistic},
                          {"stddev_statistic", a.stddev_statistic},
                          {"mean_standardized", a.mean_standardized},
                          {"stddev_standardized", a.stddev_standardized},
                          {"p_of_mean", a.p_of_mean},
                          {"rejection_rate_5pct", a.rejection_rate_5pct}});
    }
    row["tests"] = per_test;
    for (const std::string& w : cell.result.warnings) {
      bool seen = false;
      for (const std::string& have : *warnings) seen = seen || have == w;
      if (!seen) warnings->push_back(w);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool is_param_table(const std::string& id) {
  return id == "normal-params" || id == "dexp-params";
}

bool is_sim_table(const std::string& id) {
  return id == "normal-sim" || id == "dexp-vs-normal" ||
         id == "dgamma-vs-normal" || id == "dexp-sim";
}

void require_known(const std::string& id) {
  if (!is_param_table(id) && !is_sim_table(id)) {
    throw UnknownTable("unknown table id '" + id +
                       "'; expected normal-params | dexp-params | normal-sim "
                       "| dexp-vs-normal | dgamma-vs-normal | dexp-sim");
  }
}

}  // namespace

std::string reproduce_table(const std::string& id, const TableOptions& opt) {
  require_known(id);
  if (is_param_table(id)) return param_table_text(param_spec(id));
  return sim_table_text(id, sim_spec(id), opt);
}

std::string reproduce_table_json(const std::string& id,
                                 const TableOptions& opt) {
  require_known(id);
  nlohmann::json j;
  nlohmann::json config;
  config["command"] = "table";
  config["id"] = id;
  config["scale"] = opt.scale;
  config["B"] = opt.B;
  config["seed"] = opt.seed;
  j["config"] = config;
  std::vector<std::string> warnings;
  if (is_param_table(id)) {
    j["results"] = param_table_json_obj(param_spec(id));
  } else {
    j["results"] = sim_table_json_obj(id, sim_spec(id), opt, &warnings);
  }
  j["warnings"] = warnings;
  return j.dump(2);
}

}  // namespace gjb
