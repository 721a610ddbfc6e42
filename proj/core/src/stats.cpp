#include "gjb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"
#include "gjb/special_functions.hpp"

namespace gjb {

namespace {

void check_sample_size(std::size_t n, int order, const TestPolicy& policy,
                       std::vector<std::string>& warnings) {
  int floor = policy.hard_floor(order);
  if (n < static_cast<std::size_t>(floor)) {
    throw DegenerateSample("test of order " + std::to_string(order) +
                           " needs n >= " + std::to_string(floor) + ", got " +
                           std::to_string(n));
  }
  if (n < static_cast<std::size_t>(policy.warn_below)) {
    warnings.push_back("small sample (n = " + std::to_string(n) +
                       "): asymptotic p-values are rough below n = " +
                       std::to_string(policy.warn_below));
  }
}

double tail_p_value(double standardized, TailConvention tail) {
  double two_sided = 2.0 * normal_upper_tail(std::abs(standardized));
  return tail == TailConvention::two_sided_abs ? two_sided : 0.5 * two_sided;
}

}  // namespace

const char* to_string(VarianceSource v) noexcept {
  return v == VarianceSource::exact ? "exact" : "plugin";
}

const char* to_string(TailConvention t) noexcept {
  return t == TailConvention::two_sided_abs ? "two_sided_abs" : "one_sided_abs";
}

std::vector<double> central_moments(const Sample& s, int max_ell) {
  if (s.n() == 0) throw DegenerateSample("empty sample");
  if (max_ell < 0) throw InvalidParam("moment order must be >= 0");
  const double n = static_cast<double>(s.n());
  CompensatedSum mean_acc;
  for (double x : s.values) mean_acc.add(x);
  const double mean = mean_acc.value() / n;

  std::vector<CompensatedSum> acc(static_cast<std::size_t>(max_ell) + 1);
  for (double x : s.values) {
    const double d = x - mean;
    double pw = 1.0;
    for (int ell = 1; ell <= max_ell; ++ell) {
      pw *= d;
      acc[static_cast<std::size_t>(ell)].add(pw);
    }
  }
  std::vector<double> mu(static_cast<std::size_t>(max_ell) + 1, 1.0);
  for (int ell = 1; ell <= max_ell; ++ell) {
    mu[static_cast<std::size_t>(ell)] =
        acc[static_cast<std::size_t>(ell)].value() / n;
  }
  return mu;
}

double empirical_central_moment(const Sample& s, int ell) {
  if (ell < 1) throw InvalidParam("central moment order must be >= 1");
  return central_moments(s, ell)[static_cast<std::size_t>(ell)];
}

NcemPair ncem_from_central(const std::vector<double>& mu, int p) {
  if (p < 2) throw InvalidParam("normalized moments need p >= 2");
  if (mu.size() < static_cast<std::size_t>(2 * p) + 1) {
    throw OrderExceeded("normalized moments of order p = " +
                        std::to_string(p) + " need central moments up to " +
                        std::to_string(2 * p));
  }
  double mu2 = mu[2];
  if (!(mu2 > 0.0)) throw DegenerateSample("sample variance is zero");
  return {mu[static_cast<std::size_t>(2 * p - 1)] / std::pow(mu2, p - 0.5),
          mu[static_cast<std::size_t>(2 * p)] / ipow(mu2, p), p};
}

NcemPair sample_ncem(const Sample& s, int p) {
  if (p < 2) throw InvalidParam("normalized moments need p >= 2");
  return ncem_from_central(central_moments(s, 2 * p), p);
}

double statistic_T_from_central(const std::vector<double>& mu,
                                const FunctionFamily& family, int k) {
  if (k < 2) throw InvalidParam("test order k must be >= 2");
  CompensatedSum acc;
  for (int p = 2; p <= k; ++p) {
    NcemPair m = ncem_from_central(mu, p);
    acc.add(family.f(p, m.b));
    acc.add(family.g(p, m.a));
  }
  return acc.value();
}

double statistic_T(const Sample& s, const FunctionFamily& family, int k) {
  if (k < 2) throw InvalidParam("test order k must be >= 2");
  return statistic_T_from_central(central_moments(s, 2 * k), family, k);
}

TestReport general_test(const Sample& s, const MomentModel& model,
                        const FunctionFamily& family, int k,
                        VarianceSource variance, TailConvention tail,
                        const TestPolicy& policy) {
  if (k < 2) throw InvalidParam("test order k must be >= 2");
  if (4 * k > model.max_order()) {
    throw OrderExceeded("order-k test needs model order >= 4k = " +
                        std::to_string(4 * k));
  }
  TestReport r;
  r.test_kind = "general_normal";
  check_sample_size(s.n(), k, policy, r.warnings);

  const double Tn = statistic_T(s, family, k);
  const double T = exact_T(family, k, model);
  double sigma2 = 0.0;
  if (variance == VarianceSource::exact) {
    sigma2 = build_D(k, family, model).sigma2;
  } else {
    sigma2 = plugin_sigma2(k, family, model, s);
    r.warnings.push_back(
        "plug-in variance estimate: known to hugely overestimate the "
        "asymptotic variance on heavy-tailed data; exact is the default");
  }
  if (!(sigma2 > 0.0)) {
    throw SingularCovariance("asymptotic variance is zero; the standardized "
                             "statistic is undefined");
  }
  const double n = static_cast<double>(s.n());
  r.statistic = Tn;
  r.standardized = std::sqrt(n) * (Tn - T) / std::sqrt(sigma2);
  r.p_value = tail_p_value(r.standardized, tail);
  r.p_value_convention = to_string(tail);
  r.variance_source = to_string(variance);
  r.sigma2_used = sigma2;
  r.k = k;
  r.family = family.name();
  r.model = model.name();
  return r;
}

TestReport chi2_symmetric(const Sample& s, const MomentModel& model, int p,
                          const TestPolicy& policy) {
  if (p < 2) throw InvalidParam("chi-square test needs p >= 2");
  if (!model.symmetric()) {
    throw NotSymmetric("model '" + model.name() +
                       "' is not symmetric; use the general chi-square");
  }
  TestReport r;
  r.test_kind = "chi2_symmetric";
  check_sample_size(s.n(), p, policy, r.warnings);

  ChiSquareCoeffs c = jb_coefficients(p, model);
  NcemPair target = theoretical_ncem(model, p);
  NcemPair obs = sample_ncem(s, p);
  const double n = static_cast<double>(s.n());
  const double db = obs.b;  // symmetric model: b_p = 0
  const double da = obs.a - target.a;
  r.statistic = n * (db * db / c.bj + da * da / c.aj);
  r.standardized = r.statistic;
  r.p_value = chi2_upper_tail(r.statistic, 2);
  r.p_value_convention = "upper_tail";
  r.variance_source = "exact";
  r.p = p;
  r.model = model.name();
  r.bj = c.bj;
  r.aj = c.aj;
  r.abj = c.abj;
  r.delta = c.delta;
  return r;
}

TestReport chi2_general(const Sample& s, const MomentModel& model, int p,
                        const TestPolicy& policy) {
  if (p < 2) throw InvalidParam("chi-square test needs p >= 2");
  TestReport r;
  r.test_kind = "chi2_general";
  check_sample_size(s.n(), p, policy, r.warnings);

  ChiSquareCoeffs c = jb_coefficients(p, model);
  NcemPair target = theoretical_ncem(model, p);
  NcemPair obs = sample_ncem(s, p);
  const double n = static_cast<double>(s.n());
  const double db = obs.b - target.b;
  const double da = obs.a - target.a;
  r.statistic =
      n * (c.aj * db * db + c.bj * da * da - 2.0 * c.abj * db * da) / c.delta;
  r.standardized = r.statistic;
  r.p_value = chi2_upper_tail(r.statistic, 2);
  r.p_value_convention = "upper_tail";
  r.variance_source = "exact";
  r.p = p;
  r.model = model.name();
  r.bj = c.bj;
  r.aj = c.aj;
  r.abj = c.abj;
  r.delta = c.delta;
  return r;
}

TestReport classical_jb(const Sample& s, const TestPolicy& policy) {
  TestReport r;
  r.test_kind = "classical_jb";
  check_sample_size(s.n(), 2, policy, r.warnings);
  NcemPair obs = sample_ncem(s, 2);
  const double n = static_cast<double>(s.n());
  const double b = obs.b;
  const double da = obs.a - 3.0;
  r.statistic = n * (b * b / 6.0 + da * da / 24.0);
  r.standardized = r.statistic;
  r.p_value = chi2_upper_tail(r.statistic, 2);
  r.p_value_convention = "upper_tail";
  r.variance_source = "exact";
  r.p = 2;
  r.model = "normal:0,1";
  return r;
}

TestReport ks_test(const Sample& s, const MomentModel& model,
                   const TestPolicy& policy) {
  if (!model.has_cdf()) {
    throw NoCdf("KS test needs a model CDF; model '" + model.name() +
                "' carries none");
  }
  if (s.n() == 0) throw DegenerateSample("empty sample");
  TestReport r;
  r.test_kind = "ks";
  if (s.n() < static_cast<std::size_t>(policy.warn_below)) {
    r.warnings.push_back(
        "small sample (n = " + std::to_string(s.n()) +
        "): the asymptotic Kolmogorov p-value is rough below n = " +
        std::to_string(policy.warn_below));
  }
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(s.n());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double F = model.cdf(sorted[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - F;
    double lo = F - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  r.statistic = std::sqrt(n) * d;
  r.standardized = r.statistic;
  r.p_value = kolmogorov_tail(r.statistic);
  r.p_value_convention = "upper_tail";
  r.variance_source = "exact";
  r.model = model.name();
  return r;
}

}  // namespace gjb
