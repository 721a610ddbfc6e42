#include "gjb/moments.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"
#include "gjb/special_functions.hpp"

namespace gjb {

namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_order(int L, int min_order, const char* model) {
  if (L < min_order) {
    throw InvalidParam(std::string(model) + " model needs moment order >= " +
                       std::to_string(min_order));
  }
}

}  // namespace

MomentModel::MomentModel(ModelKind kind, std::string name,
                         std::vector<double> params,
                         std::vector<double> raw_moments, CdfFn cdf,
                         std::vector<double> central_moments)
    : kind_(kind),
      name_(std::move(name)),
      params_(std::move(params)),
      moments_(std::move(raw_moments)),
      symmetric_(true),
      cdf_(std::move(cdf)) {
  if (!central_moments.empty()) {
    if (central_moments.size() !=
        static_cast<std::size_t>(moments_.max_order()) + 1) {
      throw InvalidParam("central moments must match the raw moment order");
    }
    central_ = std::move(central_moments);
  } else {
    central_.resize(static_cast<std::size_t>(moments_.max_order()) + 1, 0.0);
    for (int ell = 0; ell <= moments_.max_order(); ++ell) {
      central_[static_cast<std::size_t>(ell)] = central_from_raw(moments_, ell);
    }
  }
  // Symmetry about the mean, the property the chi-square splitting needs:
  // odd central moments vanish, so the odd/even influence covariance is 0.
  for (int ell = 3; ell <= moments_.max_order(); ell += 2) {
    if (central_[static_cast<std::size_t>(ell)] != 0.0) {
      symmetric_ = false;
      break;
    }
  }
}

double MomentModel::central_moment(int ell) const {
  if (ell < 0 || ell > max_order()) {
    throw OrderExceeded("central moment of order " + std::to_string(ell) +
                        " requested from model '" + name_ + "' of max order " +
                        std::to_string(max_order()));
  }
  return central_[static_cast<std::size_t>(ell)];
}

double MomentModel::cdf(double x) const {
  if (!cdf_) throw NoCdf("model '" + name_ + "' carries no CDF");
  return cdf_(x);
}

MomentModel normal_moments(double m, double sigma, int L) {
  if (!(sigma > 0.0)) throw InvalidParam("normal model needs sigma > 0");
  require_order(L, 4, "normal");
  // Central moments first: mu_{2k} = (2k)!/(2^k k!) sigma^{2k} (odd zero),
  // then the binomial shift to raw moments about the origin.
  std::vector<double> central(static_cast<std::size_t>(L) + 1, 0.0);
  central[0] = 1.0;
  double fact = 1.0;  // (2k-1)!! running product
  double s2 = sigma * sigma;
  double pw = 1.0;
  for (int k = 1; 2 * k <= L; ++k) {
    fact *= 2.0 * k - 1.0;
    pw *= s2;
    central[static_cast<std::size_t>(2 * k)] = fact * pw;
  }
  std::vector<double> raw(static_cast<std::size_t>(L) + 1, 0.0);
  for (int ell = 0; ell <= L; ++ell) {
    CompensatedSum acc;
    for (int j = 0; j <= ell; ++j) {
      acc.add(binomial(ell, j) * central[static_cast<std::size_t>(j)] *
              ipow(m, ell - j));
    }
    raw[static_cast<std::size_t>(ell)] = acc.value();
  }
  double mu = m;
  double sd = sigma;
  return MomentModel(
      ModelKind::normal,
      "normal:" + format_param(m) + "," + format_param(sigma), {m, sigma},
      std::move(raw), [mu, sd](double x) { return normal_cdf((x - mu) / sd); },
      std::move(central));
}

MomentModel laplace_moments(double lambda, int L) {
  if (!(lambda > 0.0)) throw InvalidParam("dexp model needs lambda > 0");
  require_order(L, 4, "dexp");
  std::vector<double> raw(static_cast<std::size_t>(L) + 1, 0.0);
  raw[0] = 1.0;
  double v = 1.0;  // (2k)!/lambda^{2k} running product
  for (int k = 1; 2 * k <= L; ++k) {
    v *= (2.0 * k - 1.0) * (2.0 * k) / (lambda * lambda);
    raw[static_cast<std::size_t>(2 * k)] = v;
  }
  double lam = lambda;
  return MomentModel(ModelKind::double_exponential,
                     "dexp:" + format_param(lambda), {lambda}, std::move(raw),
                     [lam](double x) {
                       if (x < 0.0) return 0.5 * std::exp(lam * x);
                       return 1.0 - 0.5 * std::exp(-lam * x);
                     });
}

MomentModel double_gamma_moments(double a, double b, int L) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidParam("dgamma model needs a > 0 and b > 0");
  }
  require_order(L, 4, "dgamma");
  std::vector<double> raw(static_cast<std::size_t>(L) + 1, 0.0);
  raw[0] = 1.0;
  // raw[2k] = a(a+1)...(a+2k-1)/b^{2k}
  double v = 1.0;
  for (int k = 1; 2 * k <= L; ++k) {
    v *= (a + 2.0 * k - 2.0) * (a + 2.0 * k - 1.0) / (b * b);
    raw[static_cast<std::size_t>(2 * k)] = v;
  }
  double sa = a;
  double sb = b;
  return MomentModel(ModelKind::double_gamma,
                     "dgamma:" + format_param(a) + "," + format_param(b),
                     {a, b}, std::move(raw), [sa, sb](double x) {
                       if (x >= 0.0) {
                         return 0.5 + 0.5 * regularized_gamma_p(sa, sb * x);
                       }
                       return 0.5 * regularized_gamma_q(sa, -sb * x);
                     });
}

MomentModel empirical_moments(const Sample& s, int L,
                              const std::string& label) {
  if (s.n() < 2) throw DegenerateSample("empirical model needs n >= 2");
  require_order(L, 2, "empirical");
  const auto n = static_cast<double>(s.n());
  std::vector<double> raw(static_cast<std::size_t>(L) + 1, 0.0);
  raw[0] = 1.0;
  for (int ell = 1; ell <= L; ++ell) {
    CompensatedSum acc;
    for (double x : s.values) acc.add(ipow(x, ell));
    raw[static_cast<std::size_t>(ell)] = acc.value() / n;
  }
  if (!(raw[2] - raw[1] * raw[1] > 0.0)) {
    throw DegenerateSample("all observations are equal");
  }
  // Central moments straight from the centered data, not by shifting the
  // raw moments: the shift cancels catastrophically once |mean| >> sd.
  std::vector<double> central(static_cast<std::size_t>(L) + 1, 0.0);
  central[0] = 1.0;
  const double mean = raw[1];
  for (int ell = 2; ell <= L; ++ell) {
    CompensatedSum acc;
    for (double x : s.values) acc.add(ipow(x - mean, ell));
    central[static_cast<std::size_t>(ell)] = acc.value() / n;
  }
  return MomentModel(ModelKind::empirical, label, {}, std::move(raw), CdfFn{},
                     std::move(central));
}

double central_from_raw(const MomentSequence& M, int ell) {
  if (ell > M.max_order()) {
    throw OrderExceeded("central moment of order " + std::to_string(ell) +
                        " needs raw moments beyond max order " +
                        std::to_string(M.max_order()));
  }
  if (ell == 0) return 1.0;
  if (ell == 1) return 0.0;
  double m1 = M.mean();
  CompensatedSum acc;
  for (int p = 0; p <= ell; ++p) {
    acc.add(binomial(ell, p) * ipow(-m1, ell - p) * M.raw(p));
  }
  return acc.value();
}

NcemPair theoretical_ncem(const MomentModel& model, int p) {
  if (p < 2) throw InvalidParam("normalized moments need p >= 2");
  if (2 * p > model.max_order()) {
    throw OrderExceeded("normalized moments of order p = " + std::to_string(p) +
                        " need model order >= " + std::to_string(2 * p));
  }
  double sigma2 = model.sigma2();
  double b = model.central_moment(2 * p - 1) / std::pow(sigma2, p - 0.5);
  double a = model.central_moment(2 * p) / ipow(sigma2, p);
  return {b, a, p};
}

}  // namespace gjb
