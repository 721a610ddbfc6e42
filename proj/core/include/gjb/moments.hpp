#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gjb/moment_sequence.hpp"
#include "gjb/sample.hpp"

namespace gjb {

enum class ModelKind { normal, double_exponential, double_gamma, empirical };

using CdfFn = std::function<double(double)>;

// A hypothesized distribution: identity + parameters, raw moments to a fixed
// order, central moments, and (for parametric models) a CDF.
// Immutable after construction.
class MomentModel {
 public:
  // When the caller knows the central moments exactly (closed form, or a
  // direct two-pass computation from data) it should pass them: the binomial
  // shift from raw moments loses precision rapidly at high order once the
  // mean is large against the scale. An empty vector derives them from the
  // raw moments instead.
  MomentModel(ModelKind kind, std::string name, std::vector<double> params,
              std::vector<double> raw_moments, CdfFn cdf,
              std::vector<double> central_moments = {});

  ModelKind kind() const noexcept { return kind_; }
  // Canonical spec string, e.g. "normal:0,1" or "dexp:2".
  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& params() const noexcept { return params_; }

  const MomentSequence& moments() const noexcept { return moments_; }
  int max_order() const noexcept { return moments_.max_order(); }
  double raw_moment(int ell) const { return moments_.raw(ell); }
  // Central moment mu_ell, precomputed at construction.
  double central_moment(int ell) const;
  double mean() const noexcept { return moments_.mean(); }
  double sigma2() const { return central_moment(2); }

  // True when every odd central moment is exactly zero: symmetry about the
  // mean, which is what makes the odd/even influence covariance vanish.
  bool symmetric() const noexcept { return symmetric_; }

  bool has_cdf() const noexcept { return static_cast<bool>(cdf_); }
  // F(x); NoCdf when the model carries none (empirical models).
  double cdf(double x) const;

  bool sampleable() const noexcept { return kind_ != ModelKind::empirical; }

 private:
  ModelKind kind_;
  std::string name_;
  std::vector<double> params_;
  MomentSequence moments_;
  std::vector<double> central_;
  bool symmetric_;
  CdfFn cdf_;
};

// Default moment order carried by the model factories: enough headroom for
// every test order the engine accepts (4k with k <= 6).
inline constexpr int kDefaultMomentOrder = 26;

// N(m, sigma^2). Central moments are 0 (odd) and (2k)!/(2^k k!) sigma^{2k}
// (even); raw moments follow by a binomial shift.
MomentModel normal_moments(double m, double sigma, int L = kDefaultMomentOrder);

// Double exponential with density (lambda/2) exp(-lambda |x|):
// raw[2k] = (2k)!/lambda^{2k}, odd raw moments zero.
MomentModel laplace_moments(double lambda, int L = kDefaultMomentOrder);

// Double gamma with density b^a/(2 Gamma(a)) |x|^{a-1} exp(-b|x|):
// raw[2k] = a(a+1)...(a+2k-1)/b^{2k}, odd raw moments zero.
MomentModel double_gamma_moments(double a, double b,
                                 int L = kDefaultMomentOrder);

// Plain power-sum moments of an observed sample; no CDF is attached.
// DegenerateSample when n < 2 or all observations are equal.
MomentModel empirical_moments(const Sample& s, int L = kDefaultMomentOrder,
                              const std::string& label = "empirical");

// mu_ell = sum_{p=0}^{ell} C(ell,p) (-m_1)^{ell-p} m_p.
double central_from_raw(const MomentSequence& M, int ell);

// Normalized centered moments of order p: b (odd, order 2p-1) and
// a (even, order 2p).
struct NcemPair {
  double b;
  double a;
  int p;
};

// b_p = mu_{2p-1}/sigma^{2p-1}, a_p = mu_{2p}/sigma^{2p}.
// Requires p >= 2 and model order >= 2p.
NcemPair theoretical_ncem(const MomentModel& model, int p);

}  // namespace gjb
