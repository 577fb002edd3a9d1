#include "stochord/rng.hpp"

#include <cmath>

#include "stochord/error.hpp"

namespace stochord {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& s : s_) s = splitmix64(state);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  std::uint64_t mixed = index ^ 0xD1B54A32D192ED03ULL;
  const std::uint64_t b = splitmix64(mixed);
  return Rng(a ^ (b * 0x9E3779B97F4A7C15ULL));
}

namespace {
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= limit) return x % bound;
  }
}

long sample_poisson(Rng& rng, double lambda) {
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "Poisson mean must be finite and nonnegative");
  }
  if (lambda == 0) return 0;
  if (lambda <= 30) {
    double mass = std::exp(-lambda);
    double cum = mass;
    const double u = rng.uniform();
    long k = 0;
    while (u > cum && mass > 0) {
      ++k;
      mass *= lambda / static_cast<double>(k);
      cum += mass;
    }
    return k;
  }
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(k);
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1)) {
      return static_cast<long>(k);
    }
  }
}

long sample_binomial(Rng& rng, long n, double p) {
  long k = 0;
  for (long i = 0; i < n; ++i) {
    if (rng.uniform() < p) ++k;
  }
  return k;
}

}  // namespace stochord
