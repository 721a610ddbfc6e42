#pragma once

#include <vector>

#include "gjb/polynomial.hpp"

namespace gjb {

// Raw moments m_0..m_L of a distribution, raw(0) = 1.
// Construction enforces raw[0] == 1 and a nondegenerate variance
// raw[2] - raw[1]^2 > 0 (when order >= 2).
class MomentSequence {
 public:
  explicit MomentSequence(std::vector<double> raw);

  int max_order() const noexcept { return static_cast<int>(raw_.size()) - 1; }
  // m_ell; OrderExceeded past max_order.
  double raw(int ell) const;
  double mean() const noexcept { return raw_[1]; }

 private:
  std::vector<double> raw_;
};

// Moment functionals: expectation, variance and covariance of a polynomial
// under the distribution behind M. Sums are compensated; see numeric.hpp.

// E[p(X)] = sum_j coeff(j) * m_j. OrderExceeded when degree(p) > max_order.
double expect(const Polynomial& p, const MomentSequence& M);

// Var[p(X)] = E[p^2] - E[p]^2. Requires 2*degree(p) <= max_order.
// Round-off can push a true zero slightly negative: values within
// 1e-9*(1+|E[p^2]|) of zero are clamped to 0 (reported through *clamped);
// anything more negative means the moment sequence is inconsistent and
// raises InvalidParam.
double variance(const Polynomial& p, const MomentSequence& M,
                bool* clamped = nullptr);

// Cov[p(X), q(X)] = E[pq] - E[p]E[q]. Requires degree(p)+degree(q) <= max_order.
double covariance(const Polynomial& p, const Polynomial& q,
                  const MomentSequence& M);

}  // namespace gjb
