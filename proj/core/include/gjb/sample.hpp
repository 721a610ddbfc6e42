#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gjb {

// An observed data vector. Order is preserved as loaded/drawn.
struct Sample {
  std::vector<double> values;

  Sample() = default;
  explicit Sample(std::vector<double> v) : values(std::move(v)) {}
  std::size_t n() const noexcept { return values.size(); }
};

}  // namespace gjb
