#pragma once

#include <cstdint>

namespace stochord {

/// Default seed used when neither a flag nor STOCHORD_SEED provides one.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for sample `index` under `seed`; results do not
  /// depend on the order in which samples are generated.
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

/// Inversion by sequential search for lambda <= 30, PTRS (Hormann's
/// transformed rejection) above.
long sample_poisson(Rng& rng, double lambda);

/// Sum of n Bernoulli(p) draws by inversion of the uniform thresholds.
long sample_binomial(Rng& rng, long n, double p);

}  // namespace stochord
