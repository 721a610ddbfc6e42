#include "gjb/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "gjb/errors.hpp"

namespace gjb {

namespace {

std::string trimmed(const std::string& line) {
  std::size_t b = 0;
  std::size_t e = line.size();
  while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return line.substr(b, e - b);
}

bool parse_real(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

Sample load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);

  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty()) continue;
    double v = 0.0;
    if (!parse_real(t, v)) {
      // A single leading non-numeric line is a header.
      if (first_content_line) {
        first_content_line = false;
        continue;
      }
      throw ParseError("not a number: '" + t + "'", lineno);
    }
    if (!std::isfinite(v)) {
      throw ParseError("non-finite value: '" + t + "'", lineno);
    }
    first_content_line = false;
    values.push_back(v);
  }
  if (values.empty()) throw EmptyFile("no data rows in '" + path + "'");
  return Sample(std::move(values));
}

}  // namespace gjb
