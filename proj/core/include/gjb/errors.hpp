#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gjb {

// Base class for all engine errors. exit_code maps onto the CLI contract:
// 2 for input/usage problems, 1 for computation failures.
class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

// A polynomial or test order asks for moments beyond what a model carries.
struct OrderExceeded : Error {
  explicit OrderExceeded(const std::string& m) : Error(m, 1) {}
};

// A parameter outside its domain (sigma <= 0, odd power, bad grammar, ...).
struct InvalidParam : Error {
  explicit InvalidParam(const std::string& m) : Error(m, 2) {}
};

// Sample unusable for the requested statistic: too small or zero variance.
struct DegenerateSample : Error {
  explicit DegenerateSample(const std::string& m) : Error(m, 1) {}
};

// A symmetric-only test was asked to run against an asymmetric model.
struct NotSymmetric : Error {
  explicit NotSymmetric(const std::string& m) : Error(m, 1) {}
};

// delta(p) = aj*bj - abj^2 is too close to zero for the general chi-square.
struct SingularCovariance : Error {
  explicit SingularCovariance(const std::string& m) : Error(m, 1) {}
};

// CDF requested from a model that has none (empirical models).
struct NoCdf : Error {
  explicit NoCdf(const std::string& m) : Error(m, 1) {}
};

// Draws requested from a model that cannot be sampled (empirical models).
struct NotSampleable : Error {
  explicit NotSampleable(const std::string& m) : Error(m, 1) {}
};

// Input file holds no data rows.
struct EmptyFile : Error {
  explicit EmptyFile(const std::string& m) : Error(m, 2) {}
};

// Unrecognized table identifier.
struct UnknownTable : Error {
  explicit UnknownTable(const std::string& m) : Error(m, 2) {}
};

// Malformed input data; line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& m, std::size_t line)
      : Error(m + " (line " + std::to_string(line) + ")", 2), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gjb
