#pragma once

#include <cmath>

namespace gjb {

// Neumaier variant of Kahan summation. Moment-space dot products cancel
// severely (terms of magnitude ~1e11 summing to ~1e5 for heavy-tailed
// models), so every expectation-like sum in the engine goes through this.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Binomial coefficient by Pascal recurrence; exact in double arithmetic far
// beyond the orders used here (<= 26).
double binomial(int n, int k) noexcept;

// x^n for small nonnegative integer n by repeated multiplication.
// ipow(x, 0) == 1 for every x, including 0.
inline double ipow(double x, int n) noexcept {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace gjb
