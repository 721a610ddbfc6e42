#include <cmath>
#include <iomanip>
#include <sstream>

#include "gjb/stats.hpp"
#include "json.hpp"

namespace gjb {

namespace {

using nlohmann::json;

json real_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json string_or_null(const std::string& s) {
  if (s.empty()) return nullptr;
  return s;
}

json int_or_null(int v) {
  if (v == 0) return nullptr;
  return v;
}

}  // namespace

std::string report_json(const TestReport& r) {
  json j;
  j["test_kind"] = r.test_kind;
  j["statistic"] = r.statistic;
  j["standardized"] = r.standardized;
  j["p_value"] = r.p_value;
  j["p_value_convention"] = r.p_value_convention;
  j["variance_source"] = r.variance_source;
  j["sigma2_used"] = real_or_null(r.sigma2_used);
  j["k"] = int_or_null(r.k);
  j["p"] = int_or_null(r.p);
  j["family"] = string_or_null(r.family);
  j["model"] = string_or_null(r.model);
  j["warnings"] = r.warnings;
  if (!std::isnan(r.bj)) {
    j["bj"] = r.bj;
    j["aj"] = r.aj;
    j["abj"] = r.abj;
    j["delta"] = r.delta;
  }
  return j.dump();
}

std::string report_text(const TestReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "test:          " << r.test_kind << "\n";
  os << "statistic:     " << r.statistic << "\n";
  os << "standardized:  " << r.standardized << "\n";
  os << "p_value:       " << r.p_value << "  (" << r.p_value_convention
     << ")\n";
  os << "variance:      " << r.variance_source;
  if (!std::isnan(r.sigma2_used)) os << "  (sigma2 = " << r.sigma2_used << ")";
  os << "\n";
  if (r.k != 0) os << "k:             " << r.k << "\n";
  if (r.p != 0) os << "p:             " << r.p << "\n";
  if (!r.family.empty()) os << "family:        " << r.family << "\n";
  if (!r.model.empty()) os << "model:         " << r.model << "\n";
  if (!std::isnan(r.bj)) {
    os << "bj:            " << r.bj << "\n";
    os << "aj:            " << r.aj << "\n";
    os << "abj:           " << r.abj << "\n";
    os << "delta:         " << r.delta << "\n";
  }
  for (const auto& w : r.warnings) os << "warning:       " << w << "\n";
  return os.str();
}

}  // namespace gjb
