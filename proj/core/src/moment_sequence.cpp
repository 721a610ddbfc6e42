#include "gjb/moment_sequence.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"

namespace gjb {

namespace {

constexpr int kPascalRows = 64;

}  // namespace

double binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0.0;
  // Pascal triangle, built once; every entry used here is an exact integer
  // in double (the engine never exceeds order 26).
  static const auto table = [] {
    std::vector<std::vector<double>> t(kPascalRows + 1);
    for (int i = 0; i <= kPascalRows; ++i) {
      t[i].assign(static_cast<std::size_t>(i) + 1, 1.0);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (n <= kPascalRows) return table[n][static_cast<std::size_t>(k)];
  // Out-of-table fallback, multiplicative form.
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

MomentSequence::MomentSequence(std::vector<double> raw) : raw_(std::move(raw)) {
  if (raw_.empty() || raw_[0] != 1.0) {
    throw InvalidParam("moment sequence must start with raw[0] = 1");
  }
  if (raw_.size() >= 3) {
    double var = raw_[2] - raw_[1] * raw_[1];
    if (!(var > 0.0)) {
      throw InvalidParam("moment sequence has nonpositive variance");
    }
  }
}

double MomentSequence::raw(int ell) const {
  if (ell < 0 || ell > max_order()) {
    throw OrderExceeded("moment of order " + std::to_string(ell) +
                        " requested from a sequence of max order " +
                        std::to_string(max_order()));
  }
  return raw_[static_cast<std::size_t>(ell)];
}

double expect(const Polynomial& p, const MomentSequence& M) {
  if (p.degree() > M.max_order()) {
    throw OrderExceeded("expectation of a degree-" +
                        std::to_string(p.degree()) +
                        " polynomial needs moments beyond max order " +
                        std::to_string(M.max_order()));
  }
  CompensatedSum acc;
  for (int j = 0; j <= p.degree(); ++j) acc.add(p.coeff(j) * M.raw(j));
  return acc.value();
}

double variance(const Polynomial& p, const MomentSequence& M, bool* clamped) {
  if (clamped) *clamped = false;
  double second = expect(p * p, M);
  double first = expect(p, M);
  double v = second - first * first;
  if (v < 0.0) {
    double eps = 1e-9 * (1.0 + std::abs(second));
    if (v >= -eps) {
      if (clamped) *clamped = true;
      return 0.0;
    }
    throw InvalidParam("negative variance " + std::to_string(v) +
                       ": inconsistent moment sequence");
  }
  return v;
}

double covariance(const Polynomial& p, const Polynomial& q,
                  const MomentSequence& M) {
  return expect(p * q, M) - expect(p, M) * expect(q, M);
}

}  // namespace gjb
