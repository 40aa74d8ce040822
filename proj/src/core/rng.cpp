#include "core/rng.hpp"

#include <cmath>

#include "core/error.hpp"

namespace nbmf {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Mix seed and stream into one engine seed; two splitmix rounds decorrelate
// adjacent stream ids.
std::uint64_t derive_seed(RngSpec spec) {
  std::uint64_t s = spec.master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= spec.stream_id * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9E3779B97F4A7C15ULL);
}

}  // namespace

Rng::Rng(RngSpec spec) : spec_(spec), engine_(derive_seed(spec)) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open01() {
  double u = uniform01();
  while (u == 0.0) u = uniform01();
  return u;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  require(n > 0, ErrorCode::InvalidArgument, "uniform_index: n must be positive");
  // Rejection sampling over the largest multiple of n, unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Rng::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, ErrorCode::InvalidArgument,
          "gamma: shape and scale must be positive");
  if (shape < 1.0) {
    // Boost: draw Gamma(shape+1) and scale down by U^(1/shape).
    const double u = uniform_open01();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace nbmf
