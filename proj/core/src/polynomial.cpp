#include "gjb/polynomial.hpp"

#include <cstddef>
#include <utility>

namespace gjb {

Polynomial::Polynomial(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::constant(double c) {
  return Polynomial(std::vector<double>{c});
}

Polynomial Polynomial::monomial(int degree, double coeff) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

double Polynomial::coeff(int j) const noexcept {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(j)];
}

double Polynomial::operator()(double x) const noexcept {
  double r = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

}  // namespace gjb
