#pragma once

#include <vector>

#include "gjb/families.hpp"
#include "gjb/moments.hpp"
#include "gjb/polynomial.hpp"
#include "gjb/sample.hpp"

namespace gjb {

// Influence polynomials of a model, the first-order asymptotic
// representation of the normalized-moment estimators:
//   A(ell) drives sqrt(n)(mu_{n,ell} - mu_ell),
//   B(p)   drives sqrt(n)(b_{n,p} - b_p),
//   C(p)   drives sqrt(n)(a_{n,p} - a_p),
//   D      drives sqrt(n)(T_n - T), with Var(D) = sigma2.
struct InfluenceSet {
  int k = 0;
  std::vector<Polynomial> A;  // indexed by ell, valid for 1..2k
  std::vector<Polynomial> B;  // indexed by p, valid for 2..k
  std::vector<Polynomial> C;  // indexed by p, valid for 2..k
  Polynomial D;
  // D rewritten around the model mean: D(x) = D_centered(x - mean) + const.
  // Influence polynomials only matter modulo additive constants, and the
  // centered form keeps every coefficient on the scale of the distribution,
  // so evaluation and variance stay accurate even when |mean| >> sd.
  Polynomial D_centered;
  double mean = 0.0;
  double sigma2 = 0.0;
};

// A(ell) = h_ell + sum_{p=0}^{ell-1} C(ell,p) (-1)^{ell-p}
//          (m1^{ell-p} h_p + (ell-p) m1^{ell-p-1} m_p h_1),
// assembled exactly in coefficient space. For centered models this
// collapses to h_ell - ell m_{ell-1} h_1.
Polynomial build_A(int ell, const MomentModel& model);

// B(p) = sigma^{-(2p-1)} (A(2p-1) - (2p-1)/2 sigma^{-2} mu_{2p-1} A(2)).
Polynomial build_B(int p, const MomentModel& model);

// C(p) = sigma^{-2p} (A(2p) - p sigma^{-2} mu_{2p} A(2)).
Polynomial build_C(int p, const MomentModel& model);

// D = sum_{p=2}^{k} f'(b_p) B(p) + g'(a_p) C(p), weights taken at the
// model's theoretical normalized moments; sigma2 = Var(D) under the model.
// sigma2 is computed from D_centered against the central-moment sequence,
// which is exact for the variance and numerically stable for any location.
// Requires model order >= 4k.
InfluenceSet build_D(int k, const FunctionFamily& family,
                     const MomentModel& model);

// Asymptotic covariance data of the pair (b_{n,p}, a_{n,p}).
struct ChiSquareCoeffs {
  int p = 0;
  double bj = 0.0;   // Var(B(p))
  double aj = 0.0;   // Var(C(p))
  double abj = 0.0;  // Cov(B(p), C(p)); exactly 0 for symmetric models
  double delta = 0.0;  // aj*bj - abj^2
};

// Requires model order >= 4p. SingularCovariance when
// delta <= 1e-12 * aj * bj (the general chi-square would amplify noise).
ChiSquareCoeffs jb_coefficients(int p, const MomentModel& model);

// Empirical variance of D_k over the sample points, D_k built from the
// hypothesized model's moments. Known to be unstable in heavy tails; every
// report using it carries a warning. DegenerateSample on an empty sample.
double plugin_sigma2(int k, const FunctionFamily& family,
                     const MomentModel& model, const Sample& s);

}  // namespace gjb
