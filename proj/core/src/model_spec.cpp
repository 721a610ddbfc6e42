#include "gjb/model_spec.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "gjb/csv.hpp"
#include "gjb/errors.hpp"

namespace gjb {

namespace {

bool parse_real(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<double> parse_params(const std::string& text, std::size_t expect,
                                 const std::string& grammar) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    if (!parse_real(tok, v)) {
      throw InvalidParam("bad model parameter '" + tok + "'; expected " +
                         grammar);
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expect) {
    throw InvalidParam("expected " + grammar);
  }
  return out;
}

}  // namespace

MomentModel parse_model(const std::string& text, int L) {
  std::size_t colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string rest =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (kind == "normal") {
    auto p = parse_params(rest, 2, "normal:m,sigma");
    return normal_moments(p[0], p[1], L);
  }
  if (kind == "dexp") {
    auto p = parse_params(rest, 1, "dexp:lambda");
    return laplace_moments(p[0], L);
  }
  if (kind == "dgamma") {
    auto p = parse_params(rest, 2, "dgamma:a,b");
    return double_gamma_moments(p[0], p[1], L);
  }
  if (kind == "empirical") {
    if (rest.empty()) throw InvalidParam("expected empirical:<path>");
    return empirical_moments(load_csv(rest), L, text);
  }
  throw InvalidParam(
      "unknown model '" + text +
      "'; expected normal:m,sigma | dexp:lambda | dgamma:a,b | "
      "empirical:<path>");
}

FunctionFamily parse_family(const std::string& text) {
  if (text == "square") return FunctionFamily::square();
  const std::string prefix = "theta:";
  if (text.rfind(prefix, 0) == 0) {
    std::string rest = text.substr(prefix.size());
    std::size_t comma = rest.find(',');
    if (comma == std::string::npos) {
      throw InvalidParam("expected theta:<theta>,<power>");
    }
    double theta = 0.0;
    double power = 0.0;
    if (!parse_real(rest.substr(0, comma), theta) ||
        !parse_real(rest.substr(comma + 1), power) ||
        power != static_cast<int>(power)) {
      throw InvalidParam("expected theta:<theta>,<power> with integer power");
    }
    return FunctionFamily::theta_power(theta, static_cast<int>(power));
  }
  throw InvalidParam("unknown family '" + text +
                     "'; expected square | theta:<theta>,<power>");
}

}  // namespace gjb
