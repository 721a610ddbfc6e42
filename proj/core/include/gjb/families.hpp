#pragma once

#include <functional>
#include <map>
#include <string>

#include "gjb/moments.hpp"

namespace gjb {

enum class FamilyKind { square, theta_power, custom };

// The (f_p, g_p) weighting family applied to odd/even normalized moments,
// with analytic first derivatives (C^1 is required by the asymptotics).
// The built-in kinds are uniform in p; a custom kind may carry per-order
// overrides (not exposed on the CLI).
class FunctionFamily {
 public:
  using Fn = std::function<double(double)>;
  struct Pair {
    Fn f, f_deriv, g, g_deriv;
  };

  // f(u) = g(u) = u^2.
  static FunctionFamily square();

  // f(u) = g(u) = theta*u + (1+u^power)^power, power even and >= 2.
  // InvalidParam otherwise.
  static FunctionFamily theta_power(double theta, int power);

  // Uniform user-supplied pair.
  static FunctionFamily custom(std::string name, Pair fns);
  // Per-order table with a fallback for orders not listed.
  static FunctionFamily custom_per_order(std::string name,
                                         std::map<int, Pair> table,
                                         Pair fallback);

  FamilyKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  // Uniform accessors (the base pair).
  double f(double u) const { return base_.f(u); }
  double f_deriv(double u) const { return base_.f_deriv(u); }
  double g(double u) const { return base_.g(u); }
  double g_deriv(double u) const { return base_.g_deriv(u); }

  // Order-aware accessors; identical to the uniform ones except for
  // custom per-order tables.
  double f(int p, double u) const { return at(p).f(u); }
  double f_deriv(int p, double u) const { return at(p).f_deriv(u); }
  double g(int p, double u) const { return at(p).g(u); }
  double g_deriv(int p, double u) const { return at(p).g_deriv(u); }

 private:
  FunctionFamily(FamilyKind kind, std::string name, Pair base);
  const Pair& at(int p) const;

  FamilyKind kind_;
  std::string name_;
  Pair base_;
  std::map<int, Pair> per_order_;
};

// T(f,g,k) = sum_{p=2}^{k} f(b_p) + g(a_p) at the model's theoretical
// normalized moments. Requires model order >= 2k.
double exact_T(const FunctionFamily& family, int k, const MomentModel& model);

}  // namespace gjb
