#include "gjb/families.hpp"

#include <sstream>
#include <utility>

#include "gjb/errors.hpp"
#include "gjb/numeric.hpp"

namespace gjb {

FunctionFamily::FunctionFamily(FamilyKind kind, std::string name, Pair base)
    : kind_(kind), name_(std::move(name)), base_(std::move(base)) {}

FunctionFamily FunctionFamily::square() {
  Pair p;
  p.f = [](double u) { return u * u; };
  p.f_deriv = [](double u) { return 2.0 * u; };
  p.g = p.f;
  p.g_deriv = p.f_deriv;
  return FunctionFamily(FamilyKind::square, "square", std::move(p));
}

FunctionFamily FunctionFamily::theta_power(double theta, int power) {
  if (power < 2 || power % 2 != 0) {
    throw InvalidParam("theta family needs an even power >= 2");
  }
  Pair p;
  p.f = [theta, power](double u) {
    return theta * u + ipow(1.0 + ipow(u, power), power);
  };
  // d/du (1+u^q)^q = q^2 u^{q-1} (1+u^q)^{q-1}
  p.f_deriv = [theta, power](double u) {
    return theta + static_cast<double>(power) * power * ipow(u, power - 1) *
                       ipow(1.0 + ipow(u, power), power - 1);
  };
  p.g = p.f;
  p.g_deriv = p.f_deriv;
  std::ostringstream name;
  name << "theta:" << theta << "," << power;
  return FunctionFamily(FamilyKind::theta_power, name.str(), std::move(p));
}

FunctionFamily FunctionFamily::custom(std::string name, Pair fns) {
  return FunctionFamily(FamilyKind::custom, std::move(name), std::move(fns));
}

FunctionFamily FunctionFamily::custom_per_order(std::string name,
                                                std::map<int, Pair> table,
                                                Pair fallback) {
  FunctionFamily fam(FamilyKind::custom, std::move(name), std::move(fallback));
  fam.per_order_ = std::move(table);
  return fam;
}

const FunctionFamily::Pair& FunctionFamily::at(int p) const {
  auto it = per_order_.find(p);
  return it == per_order_.end() ? base_ : it->second;
}

double exact_T(const FunctionFamily& family, int k, const MomentModel& model) {
  if (k < 2) throw InvalidParam("test order k must be >= 2");
  CompensatedSum acc;
  for (int p = 2; p <= k; ++p) {
    NcemPair m = theoretical_ncem(model, p);
    acc.add(family.f(p, m.b));
    acc.add(family.g(p, m.a));
  }
  return acc.value();
}

}  // namespace gjb
