#pragma once

#include <cstdint>

#include "gjb/moments.hpp"
#include "gjb/sample.hpp"

namespace gjb {

// xoshiro256++ stream seeded through splitmix64 (the generator authors'
// recommended seeding). Hand-rolled rather than <random> so that identical
// seeds give bit-identical output on every platform; the standard library
// leaves normal_distribution implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);
  // Substream for one replication: state derived from (master, index) so
  // that stream i is unaffected by whether stream j is ever drawn.
  RandomStream(std::uint64_t master, std::uint64_t index);

  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1), 53-bit resolution.
  double next_double() noexcept;
  // Uniform on (0, 1); safe under log().
  double next_double_open() noexcept;
  // Standard normal via Box-Muller; second value of each pair is cached.
  double next_normal() noexcept;
  // Exponential(1) via inverse CDF.
  double next_exponential() noexcept;
  // Gamma(shape, scale 1) by Marsaglia-Tsang rejection (exact in
  // distribution); shapes below 1 use the boost X_{a+1} U^{1/a}.
  double next_gamma(double shape);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// n independent draws from a parametric model:
//   normal       m + sigma * BoxMuller
//   dexp         inverse CDF (signed exponential)
//   dgamma       gamma magnitude times independent +-1 sign
// NotSampleable for empirical models.
Sample sample_model(const MomentModel& model, std::size_t n,
                    RandomStream& stream);

}  // namespace gjb
