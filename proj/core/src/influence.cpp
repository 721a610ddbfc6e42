#include "gjb/influence.hpp"

#include <cmath>
#include <string>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"

namespace gjb {

namespace {

// Moment sequence of the centered law X - mean: raw moments equal to the
// model's central moments. Every variance below is evaluated against this
// sequence so that coefficient and moment scales cancel by construction.
MomentSequence centered_sequence(const MomentModel& model) {
  std::vector<double> r(static_cast<std::size_t>(model.max_order()) + 1, 0.0);
  r[0] = 1.0;
  for (int ell = 2; ell <= model.max_order(); ++ell) {
    r[static_cast<std::size_t>(ell)] = model.central_moment(ell);
  }
  return MomentSequence(std::move(r));
}

// A(ell) in the centered variable y = x - mean. For a centered law the
// general formula collapses to y^ell - ell mu_{ell-1} y; the x-space A(ell)
// equals this plus an additive constant, which influence functionals ignore.
Polynomial centered_A(int ell, const MomentModel& model) {
  Polynomial A = Polynomial::monomial(ell);
  A += Polynomial::monomial(
      1, -static_cast<double>(ell) * model.central_moment(ell - 1));
  return A;
}

Polynomial centered_B(int p, const MomentModel& model) {
  double sigma2 = model.sigma2();
  double mu = model.central_moment(2 * p - 1);
  Polynomial B = centered_A(2 * p - 1, model);
  B -= (0.5 * (2 * p - 1) * mu / sigma2) * centered_A(2, model);
  B *= 1.0 / std::pow(sigma2, p - 0.5);
  return B;
}

Polynomial centered_C(int p, const MomentModel& model) {
  double sigma2 = model.sigma2();
  double mu = model.central_moment(2 * p);
  Polynomial C = centered_A(2 * p, model);
  C -= (p * mu / sigma2) * centered_A(2, model);
  C *= 1.0 / ipow(sigma2, p);
  return C;
}

}  // namespace

Polynomial build_A(int ell, const MomentModel& model) {
  if (ell < 1) throw InvalidParam("influence order must be >= 1");
  if (ell > model.max_order()) {
    throw OrderExceeded("A(" + std::to_string(ell) + ") needs model order >= " +
                        std::to_string(ell));
  }
  const double m1 = model.mean();
  Polynomial A = Polynomial::monomial(ell);
  for (int p = 0; p < ell; ++p) {
    double sign = (ell - p) % 2 == 0 ? 1.0 : -1.0;
    double c = binomial(ell, p) * sign;
    A += Polynomial::monomial(p, c * ipow(m1, ell - p));
    A += Polynomial::monomial(
        1, c * (ell - p) * ipow(m1, ell - p - 1) * model.raw_moment(p));
  }
  return A;
}

Polynomial build_B(int p, const MomentModel& model) {
  if (p < 2) throw InvalidParam("B(p) needs p >= 2");
  if (2 * p - 1 > model.max_order()) {
    throw OrderExceeded("B(" + std::to_string(p) + ") needs model order >= " +
                        std::to_string(2 * p - 1));
  }
  double sigma2 = model.sigma2();
  double mu = model.central_moment(2 * p - 1);
  Polynomial B = build_A(2 * p - 1, model);
  B -= (0.5 * (2 * p - 1) * mu / sigma2) * build_A(2, model);
  B *= 1.0 / std::pow(sigma2, p - 0.5);
  return B;
}

Polynomial build_C(int p, const MomentModel& model) {
  if (p < 2) throw InvalidParam("C(p) needs p >= 2");
  if (2 * p > model.max_order()) {
    throw OrderExceeded("C(" + std::to_string(p) + ") needs model order >= " +
                        std::to_string(2 * p));
  }
  double sigma2 = model.sigma2();
  double mu = model.central_moment(2 * p);
  Polynomial C = build_A(2 * p, model);
  C -= (p * mu / sigma2) * build_A(2, model);
  C *= 1.0 / ipow(sigma2, p);
  return C;
}

InfluenceSet build_D(int k, const FunctionFamily& family,
                     const MomentModel& model) {
  if (k < 2) throw InvalidParam("test order k must be >= 2");
  if (4 * k > model.max_order()) {
    throw OrderExceeded("order-k test needs model order >= 4k = " +
                        std::to_string(4 * k));
  }
  InfluenceSet set;
  set.k = k;
  set.mean = model.mean();
  set.A.resize(static_cast<std::size_t>(2 * k) + 1);
  set.B.resize(static_cast<std::size_t>(k) + 1);
  set.C.resize(static_cast<std::size_t>(k) + 1);
  for (int ell = 1; ell <= 2 * k; ++ell) {
    set.A[static_cast<std::size_t>(ell)] = build_A(ell, model);
  }
  for (int p = 2; p <= k; ++p) {
    set.B[static_cast<std::size_t>(p)] = build_B(p, model);
    set.C[static_cast<std::size_t>(p)] = build_C(p, model);
    NcemPair m = theoretical_ncem(model, p);
    double fw = family.f_deriv(p, m.b);
    double gw = family.g_deriv(p, m.a);
    set.D += fw * set.B[static_cast<std::size_t>(p)];
    set.D += gw * set.C[static_cast<std::size_t>(p)];
    set.D_centered += fw * centered_B(p, model);
    set.D_centered += gw * centered_C(p, model);
  }
  set.sigma2 = variance(set.D_centered, centered_sequence(model));
  return set;
}

ChiSquareCoeffs jb_coefficients(int p, const MomentModel& model) {
  if (p < 2) throw InvalidParam("chi-square coefficients need p >= 2");
  if (4 * p > model.max_order()) {
    throw OrderExceeded("chi-square coefficients of order p = " +
                        std::to_string(p) + " need model order >= " +
                        std::to_string(4 * p));
  }
  Polynomial B = centered_B(p, model);
  Polynomial C = centered_C(p, model);
  MomentSequence cm = centered_sequence(model);
  ChiSquareCoeffs out;
  out.p = p;
  out.bj = variance(B, cm);
  out.aj = variance(C, cm);
  out.abj = covariance(B, C, cm);
  out.delta = out.aj * out.bj - out.abj * out.abj;
  if (out.delta <= 1e-12 * out.aj * out.bj) {
    throw SingularCovariance(
        "delta(p) = " + std::to_string(out.delta) +
        " is numerically singular; the general chi-square is unusable");
  }
  return out;
}

double plugin_sigma2(int k, const FunctionFamily& family,
                     const MomentModel& model, const Sample& s) {
  if (s.n() == 0) throw DegenerateSample("plug-in variance needs data");
  InfluenceSet set = build_D(k, family, model);
  // Empirical variance of D over the data, two-pass. The centered form is
  // D shifted by a constant, so the variance is identical but the
  // evaluation does not cancel for models located far from the origin.
  CompensatedSum mean_acc;
  for (double x : s.values) mean_acc.add(set.D_centered(x - set.mean));
  double mean = mean_acc.value() / static_cast<double>(s.n());
  CompensatedSum var_acc;
  for (double x : s.values) {
    double d = set.D_centered(x - set.mean) - mean;
    var_acc.add(d * d);
  }
  return var_acc.value() / static_cast<double>(s.n());
}

}  // namespace gjb
