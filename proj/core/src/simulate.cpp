#include "gjb/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"
#include "gjb/random.hpp"
#include "gjb/special_functions.hpp"
#include "json.hpp"

namespace gjb {

namespace {

const char* kind_string(TestKind k) {
  switch (k) {
    case TestKind::general:
      return "general_normal";
    case TestKind::chi2_symmetric:
      return "chi2_symmetric";
    case TestKind::chi2_general:
      return "chi2_general";
    case TestKind::classical_jb:
      return "classical_jb";
    case TestKind::ks:
      return "ks";
  }
  return "?";
}

// Everything a test needs that does not depend on the replication sample.
struct TestContext {
  TestSelector sel;
  std::string label;
  int moment_order = 0;  // central moments required per replication
  // general
  double T = 0.0;
  double sigma2 = 0.0;
  Polynomial D;          // centered influence polynomial, argument x - D_mean
  double D_mean = 0.0;   // null-model mean, for per-replication plug-in
  // chi-square
  ChiSquareCoeffs coeffs;
  NcemPair target{0.0, 0.0, 0};
};

struct Evaluation {
  double statistic = 0.0;
  double standardized = 0.0;
  bool reject = false;
};

double tail_p(double t, TailConvention tail) {
  double two = 2.0 * normal_upper_tail(std::abs(t));
  return tail == TailConvention::two_sided_abs ? two : 0.5 * two;
}

Evaluation evaluate(const TestContext& ctx, const SimulationConfig& cfg,
                    const Sample& sample, const std::vector<double>& mu) {
  Evaluation ev;
  switch (ctx.sel.kind) {
    case TestKind::general: {
      double Tn = statistic_T_from_central(mu, cfg.family, cfg.k);
      double s2 = ctx.sigma2;
      if (cfg.variance == VarianceSource::plugin) {
        CompensatedSum m_acc;
        for (double x : sample.values) m_acc.add(ctx.D(x - ctx.D_mean));
        double m = m_acc.value() / static_cast<double>(sample.n());
        CompensatedSum v_acc;
        for (double x : sample.values) {
          double d = ctx.D(x - ctx.D_mean) - m;
          v_acc.add(d * d);
        }
        s2 = v_acc.value() / static_cast<double>(sample.n());
      }
      if (!(s2 > 0.0)) {
        throw SingularCovariance("zero variance in standardization");
      }
      ev.statistic = Tn;
      ev.standardized = std::sqrt(static_cast<double>(sample.n())) *
                        (Tn - ctx.T) / std::sqrt(s2);
      ev.reject = tail_p(ev.standardized, cfg.tail) < 0.05;
      return ev;
    }
    case TestKind::chi2_symmetric: {
      NcemPair obs = ncem_from_central(mu, ctx.sel.order);
      double db = obs.b;
      double da = obs.a - ctx.target.a;
      ev.statistic = static_cast<double>(sample.n()) *
                     (db * db / ctx.coeffs.bj + da * da / ctx.coeffs.aj);
      break;
    }
    case TestKind::chi2_general: {
      NcemPair obs = ncem_from_central(mu, ctx.sel.order);
      double db = obs.b - ctx.target.b;
      double da = obs.a - ctx.target.a;
      ev.statistic = static_cast<double>(sample.n()) *
                     (ctx.coeffs.aj * db * db + ctx.coeffs.bj * da * da -
                      2.0 * ctx.coeffs.abj * db * da) /
                     ctx.coeffs.delta;
      break;
    }
    case TestKind::classical_jb: {
      NcemPair obs = ncem_from_central(mu, 2);
      double da = obs.a - 3.0;
      ev.statistic = static_cast<double>(sample.n()) *
                     (obs.b * obs.b / 6.0 + da * da / 24.0);
      break;
    }
    case TestKind::ks: {
      std::vector<double> sorted = sample.values;
      std::sort(sorted.begin(), sorted.end());
      const double n = static_cast<double>(sorted.size());
      double d = 0.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        double F = cfg.model_null.cdf(sorted[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - F,
                                 F - static_cast<double>(i) / n));
      }
      ev.statistic = std::sqrt(n) * d;
      ev.standardized = ev.statistic;
      ev.reject = kolmogorov_tail(ev.statistic) < 0.05;
      return ev;
    }
  }
  // chi-square-family tail.
  ev.standardized = ev.statistic;
  ev.reject = chi2_upper_tail(ev.statistic, 2) < 0.05;
  return ev;
}

struct Failure {
  bool failed = false;
  int index = 0;
  int exit_code = 1;
  std::string message;
};

}  // namespace

TestSelector parse_test_selector(const std::string& text) {
  if (text == "general") return {TestKind::general, 0};
  if (text == "jb" || text == "classical_jb") return {TestKind::classical_jb, 0};
  if (text == "ks") return {TestKind::ks, 0};
  auto with_order = [&](const std::string& prefix,
                        TestKind kind) -> TestSelector {
    std::string rest = text.substr(prefix.size());
    int p = 0;
    try {
      std::size_t used = 0;
      p = std::stoi(rest, &used);
      if (used != rest.size()) p = 0;
    } catch (...) {
      p = 0;
    }
    if (p < 2) {
      throw InvalidParam("bad test order in '" + text + "'; expected " +
                         prefix + "<p> with p >= 2");
    }
    return {kind, p};
  };
  if (text.rfind("chi2sym:", 0) == 0) {
    return with_order("chi2sym:", TestKind::chi2_symmetric);
  }
  if (text.rfind("chi2gen:", 0) == 0) {
    return with_order("chi2gen:", TestKind::chi2_general);
  }
  throw InvalidParam("unknown test '" + text +
                     "'; expected general | chi2sym:p | chi2gen:p | jb | ks");
}

std::string selector_label(const TestSelector& sel, int k) {
  switch (sel.kind) {
    case TestKind::general:
      return "general(k=" + std::to_string(k) + ")";
    case TestKind::chi2_symmetric:
      return "chi2sym(p=" + std::to_string(sel.order) + ")";
    case TestKind::chi2_general:
      return "chi2gen(p=" + std::to_string(sel.order) + ")";
    case TestKind::classical_jb:
      return "jb";
    case TestKind::ks:
      return "ks";
  }
  return "?";
}

SimulationResult run_replications(const SimulationConfig& cfg) {
  if (cfg.B < 1) throw InvalidParam("replication count B must be >= 1");
  if (cfg.tests.empty()) throw InvalidParam("no tests selected");
  if (!cfg.model_true.sampleable()) {
    throw NotSampleable("model_true '" + cfg.model_true.name() +
                        "' cannot be sampled");
  }

  SimulationResult result;
  const TestPolicy& policy = cfg.policy;

  // Precompute per-test context; surfaces order/coefficient errors before
  // any sampling happens.
  std::vector<TestContext> ctx;
  int max_order = 0;
  int floor = 0;
  for (const TestSelector& sel : cfg.tests) {
    TestContext c;
    c.sel = sel;
    c.label = selector_label(sel, cfg.k);
    switch (sel.kind) {
      case TestKind::general: {
        c.T = exact_T(cfg.family, cfg.k, cfg.model_null);
        InfluenceSet set = build_D(cfg.k, cfg.family, cfg.model_null);
        c.sigma2 = set.sigma2;
        c.D = set.D_centered;
        c.D_mean = set.mean;
        if (cfg.variance == VarianceSource::exact && !(c.sigma2 > 0.0)) {
          throw SingularCovariance("zero asymptotic variance");
        }
        c.moment_order = 2 * cfg.k;
        floor = std::max(floor, policy.hard_floor(cfg.k));
        break;
      }
      case TestKind::chi2_symmetric:
        if (!cfg.model_null.symmetric()) {
          throw NotSymmetric("model '" + cfg.model_null.name() +
                             "' is not symmetric");
        }
        [[fallthrough]];
      case TestKind::chi2_general:
        c.coeffs = jb_coefficients(sel.order, cfg.model_null);
        c.target = theoretical_ncem(cfg.model_null, sel.order);
        c.moment_order = 2 * sel.order;
        floor = std::max(floor, policy.hard_floor(sel.order));
        break;
      case TestKind::classical_jb:
        c.moment_order = 4;
        floor = std::max(floor, policy.hard_floor(2));
        break;
      case TestKind::ks:
        if (!cfg.model_null.has_cdf()) {
          throw NoCdf("model '" + cfg.model_null.name() + "' carries no CDF");
        }
        c.moment_order = 0;
        break;
    }
    max_order = std::max(max_order, c.moment_order);
    ctx.push_back(std::move(c));
  }
  if (cfg.n < std::max(floor, 2)) {
    throw DegenerateSample("n = " + std::to_string(cfg.n) +
                           " is below the floor " +
                           std::to_string(std::max(floor, 2)) +
                           " for the selected tests");
  }
  if (cfg.n < policy.warn_below) {
    result.warnings.push_back(
        "small sample (n = " + std::to_string(cfg.n) +
        "): asymptotic p-values are rough below n = " +
        std::to_string(policy.warn_below));
  }
  if (cfg.variance == VarianceSource::plugin) {
    result.warnings.push_back(
        "plug-in variance estimate: known to hugely overestimate the "
        "asymptotic variance on heavy-tailed data; exact is the default");
  }

  const std::size_t T = ctx.size();
  const std::size_t B = static_cast<std::size_t>(cfg.B);
  std::vector<std::vector<double>> stat(T, std::vector<double>(B, 0.0));
  std::vector<std::vector<double>> stdz(T, std::vector<double>(B, 0.0));
  std::vector<std::vector<unsigned char>> rej(
      T, std::vector<unsigned char>(B, 0));

  auto run_range = [&](std::size_t lo, std::size_t hi, Failure& fail) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        RandomStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        Sample sample =
            sample_model(cfg.model_true, static_cast<std::size_t>(cfg.n), stream);
        std::vector<double> mu;
        if (max_order > 0) mu = central_moments(sample, max_order);
        for (std::size_t t = 0; t < T; ++t) {
          Evaluation ev = evaluate(ctx[t], cfg, sample, mu);
          stat[t][i] = ev.statistic;
          stdz[t][i] = ev.standardized;
          rej[t][i] = ev.reject ? 1 : 0;
        }
      } catch (const Error& e) {
        fail = {true, static_cast<int>(i), e.exit_code(), e.what()};
        return;
      } catch (const std::exception& e) {
        fail = {true, static_cast<int>(i), 1, e.what()};
        return;
      }
    }
  };

  int threads = std::max(1, cfg.threads);
  if (threads == 1 || B < 2) {
    Failure fail;
    run_range(0, B, fail);
    if (fail.failed) {
      throw Error("replication " + std::to_string(fail.index) +
                      " failed: " + fail.message,
                  fail.exit_code);
    }
  } else {
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), B);
    std::vector<Failure> fails(nt);
    std::vector<std::thread> pool;
    std::size_t chunk = (B + nt - 1) / nt;
    for (std::size_t w = 0; w < nt; ++w) {
      std::size_t lo = w * chunk;
      std::size_t hi = std::min(B, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&run_range, lo, hi, &fails, w] {
        run_range(lo, hi, fails[w]);
      });
    }
    for (auto& th : pool) th.join();
    const Failure* first = nullptr;
    for (const Failure& f : fails) {
      if (f.failed && (!first || f.index < first->index)) first = &f;
    }
    if (first) {
      throw Error("replication " + std::to_string(first->index) +
                      " failed: " + first->message,
                  first->exit_code);
    }
  }

  // Ordered reduction by replication index, identical for any thread count.
  for (std::size_t t = 0; t < T; ++t) {
    TestAggregate agg;
    agg.test = ctx[t].label;
    agg.kind = kind_string(ctx[t].sel.kind);
    const double nB = static_cast<double>(B);
    CompensatedSum ms, mz, rr;
    for (std::size_t i = 0; i < B; ++i) {
      ms.add(stat[t][i]);
      mz.add(stdz[t][i]);
      rr.add(rej[t][i]);
    }
    agg.mean_statistic = ms.value() / nB;
    agg.mean_standardized = mz.value() / nB;
    agg.rejection_rate_5pct = rr.value() / nB;
    if (B > 1) {
      CompensatedSum vs, vz;
      for (std::size_t i = 0; i < B; ++i) {
        double ds = stat[t][i] - agg.mean_statistic;
        double dz = stdz[t][i] - agg.mean_standardized;
        vs.add(ds * ds);
        vz.add(dz * dz);
      }
      agg.stddev_statistic = std::sqrt(vs.value() / (nB - 1.0));
      agg.stddev_standardized = std::sqrt(vz.value() / (nB - 1.0));
    }
    switch (ctx[t].sel.kind) {
      case TestKind::general:
        agg.p_of_mean = tail_p(agg.mean_standardized, cfg.tail);
        break;
      case TestKind::ks:
        agg.p_of_mean = kolmogorov_tail(agg.mean_standardized);
        break;
      default:
        agg.p_of_mean = chi2_upper_tail(std::max(0.0, agg.mean_standardized), 2);
        break;
    }
    result.per_test.push_back(std::move(agg));
  }
  return result;
}

namespace {

nlohmann::json config_json(const SimulationConfig& cfg) {
  nlohmann::json j;
  j["command"] = "simulate";
  j["true"] = cfg.model_true.name();
  j["null"] = cfg.model_null.name();
  j["family"] = cfg.family.name();
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["B"] = cfg.B;
  j["seed"] = cfg.seed;
  j["variance"] = to_string(cfg.variance);
  j["tail"] = to_string(cfg.tail);
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& sel : cfg.tests) tests.push_back(selector_label(sel, cfg.k));
  j["tests"] = tests;
  return j;
}

nlohmann::json aggregate_json(const TestAggregate& a) {
  nlohmann::json j;
  j["test"] = a.test;
  j["kind"] = a.kind;
  j["mean_statistic"] = a.mean_statistic;
  j["stddev_statistic"] = a.stddev_statistic;
  j["mean_standardized"] = a.mean_standardized;
  j["stddev_standardized"] = a.stddev_standardized;
  j["p_of_mean"] = a.p_of_mean;
  j["rejection_rate_5pct"] = a.rejection_rate_5pct;
  return j;
}

}  // namespace

std::string simulation_json(const SimulationConfig& cfg,
                            const SimulationResult& res) {
  nlohmann::json j;
  j["config"] = config_json(cfg);
  nlohmann::json results = nlohmann::json::array();
  for (const auto& a : res.per_test) results.push_back(aggregate_json(a));
  j["results"] = results;
  j["warnings"] = res.warnings;
  return j.dump(2);
}

std::string simulation_text(const SimulationConfig& cfg,
                            const SimulationResult& res) {
  std::ostringstream os;
  os << std::setprecision(8);
  os << "simulate: true = " << cfg.model_true.name()
     << ", null = " << cfg.model_null.name() << ", family = "
     << cfg.family.name() << ", k = " << cfg.k << "\n";
  os << "protocol: n = " << cfg.n << ", B = " << cfg.B
     << ", seed = " << cfg.seed << ", variance = " << to_string(cfg.variance)
     << ", tail = " << to_string(cfg.tail) << "\n";
  for (const auto& a : res.per_test) {
    os << "\n[" << a.test << "]\n";
    os << "  mean statistic:      " << a.mean_statistic
       << "  (sd " << a.stddev_statistic << ")\n";
    os << "  mean standardized:   " << a.mean_standardized
       << "  (sd " << a.stddev_standardized << ")\n";
    os << "  p of mean:           " << a.p_of_mean << "\n";
    os << "  rejection rate @5%:  " << a.rejection_rate_5pct << "\n";
  }
  for (const auto& w : res.warnings) os << "\nwarning: " << w << "\n";
  return os.str();
}

}  // namespace gjb
