#pragma once

#include <vector>

namespace gjb {

// Dense univariate real polynomial; coeffs[j] multiplies x^j.
// The zero polynomial stores no coefficients and reports degree -1.
// Trailing zero coefficients are trimmed so degree() is exact.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c);
  static Polynomial monomial(int degree, double coeff = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  // Coefficient of x^j; 0 outside the stored range.
  double coeff(int j) const noexcept;
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  // Horner evaluation.
  double operator()(double x) const noexcept;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  friend Polynomial operator*(Polynomial a, double c) {
    a *= c;
    return a;
  }
  friend Polynomial operator*(double c, Polynomial a) {
    a *= c;
    return a;
  }
  // Coefficient-exact convolution.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() noexcept;
  std::vector<double> coeffs_;
};

}  // namespace gjb
