#pragma once

namespace gjb {

// Standard normal CDF via the complementary error function; |error| < 1e-10.
double normal_cdf(double z) noexcept;

// P(N(0,1) >= z).
double normal_upper_tail(double z) noexcept;

// Upper tail of the chi-square law. Only dof = 2 is used by the tests,
// where the tail is exactly exp(-x/2); other dof go through the
// regularized incomplete gamma.
double chi2_upper_tail(double x, int dof = 2);

// Asymptotic Kolmogorov tail P(K > t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2),
// truncated when terms drop below 1e-12. Terms decrease monotonically for
// t > 0, so the truncation error is below the first dropped term.
double kolmogorov_tail(double t) noexcept;

// Regularized lower incomplete gamma P(a, x): power series for x < a+1,
// modified Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);
// Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

}  // namespace gjb
