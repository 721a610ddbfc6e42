#include "gjb/random.hpp"

#include <cmath>

#include "gjb/errors.hpp"

namespace gjb {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

// splitmix64 step: the recommended seeder for xoshiro-family state.
inline std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t x = seed;
  s_[0] = splitmix64(x);
  s_[1] = splitmix64(x);
  s_[2] = splitmix64(x);
  s_[3] = splitmix64(x);
  // xoshiro must not start from the all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RandomStream::RandomStream(std::uint64_t master, std::uint64_t index)
    : RandomStream(mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ull))) {}

std::uint64_t RandomStream::next_u64() noexcept {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::next_double() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_double_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_double_open();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  has_cached_normal_ = true;
  return r * std::cos(kTwoPi * u2);
}

double RandomStream::next_exponential() noexcept {
  return -std::log(next_double_open());
}

double RandomStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidParam("gamma shape must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1, then scale back: X_a = X_{a+1} U^{1/a}.
    double g = next_gamma(shape + 1.0);
    return g * std::pow(next_double_open(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze; exact rejection, no distributional shortcut.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = next_double_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

Sample sample_model(const MomentModel& model, std::size_t n,
                    RandomStream& stream) {
  if (!model.sampleable()) {
    throw NotSampleable("model '" + model.name() + "' cannot be sampled");
  }
  std::vector<double> out(n);
  switch (model.kind()) {
    case ModelKind::normal: {
      const double m = model.params()[0];
      const double sigma = model.params()[1];
      for (auto& x : out) x = m + sigma * stream.next_normal();
      break;
    }
    case ModelKind::double_exponential: {
      const double lambda = model.params()[0];
      for (auto& x : out) {
        // Inverse CDF; u = 1/2 maps to 0.
        const double u = stream.next_double_open();
        x = u < 0.5 ? std::log(2.0 * u) / lambda
                    : -std::log(2.0 - 2.0 * u) / lambda;
      }
      break;
    }
    case ModelKind::double_gamma: {
      const double a = model.params()[0];
      const double b = model.params()[1];
      for (auto& x : out) {
        const double mag = stream.next_gamma(a) / b;
        x = stream.next_double() < 0.5 ? -mag : mag;
      }
      break;
    }
    case ModelKind::empirical:
      throw NotSampleable("empirical models cannot be sampled");
  }
  return Sample(std::move(out));
}

}  // namespace gjb
