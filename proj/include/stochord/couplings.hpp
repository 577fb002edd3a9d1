#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "stochord/distribution.hpp"
#include "stochord/statistics.hpp"

namespace stochord {

/// Construction record of one coupled draw.
struct CouplingTrace {
  long events = 0;                              // number of balls or points
  std::vector<std::array<long, 2>> draws;       // boxes hit by each ball
  std::vector<std::array<long, 2>> occupancy;   // occupied counts after each ball
  std::vector<double> points;                   // point-process locations
  std::vector<long> counts;                     // Poisson counts per box
};

struct CouplingSample {
  long x1 = 0;
  long x2 = 0;
  std::optional<CouplingTrace> trace;
};

/// Joint law of the boxes hit by one ball in two systems of n1 <= n2 boxes,
/// given a1 and a2 occupied boxes. Both marginals are uniform. The occupied
/// boxes are labelled 1..a1 and 1..a2; the law is constant on each of the
/// four occupied/free blocks.
struct OccupancyJoint {
  long a1 = 0;
  long a2 = 0;
  long n1 = 0;
  long n2 = 0;
  /// Cell weight per block, indexed [first occupied ? 0 : 1][second occupied ? 0 : 1].
  std::array<std::array<Rational, 2>, 2> weight;

  Rational at(long r1, long r2) const;
  /// Total mass of a block.
  Rational block_mass(bool first_occupied, bool second_occupied) const;
};

/// Throws InvalidOccupancy unless 0 <= a1 <= n1 <= n2, 0 <= a2 <= n2, and
/// a2 < n2 whenever a1 >= a2.
OccupancyJoint q_joint(long a1, long a2, long n1, long n2);

/// x1 ~ b(n1,p1), x2 ~ b(n2,p2) with x1 <= x2, by throwing a Poisson number
/// of balls into both box systems with coupled box choices, then thinning
/// the empty boxes of the second system up to p2. Requires n1 <= n2 and
/// (1-p1)^n1 >= (1-p2)^n2, otherwise ConditionsViolated.
std::vector<CouplingSample> binomial_explicit_coupling(long n1, const Scalar& p1, long n2,
                                                       const Scalar& p2, std::uint64_t seed,
                                                       long count, bool with_trace = false);

/// Same marginals and preconditions, but the two occupancy counts are run as
/// Markov chains driven by common uniforms.
std::vector<CouplingSample> binomial_occupancy_coupling(long n1, const Scalar& p1, long n2,
                                                        const Scalar& p2, std::uint64_t seed,
                                                        long count, bool with_trace = false);

/// Occupancy chain kernel p_n(k,l): k/n for l = k, 1 - k/n for l = k+1.
Rational occupancy_transition(long n, long k, long l);

/// h_{n,l}(k) = sum_{j >= l} p_n(k, j).
Rational occupancy_upper_tail(long n, long l, long k);

/// Exact law of the number of occupied boxes after t balls in n boxes.
std::vector<Rational> occupancy_pushforward(long n, long t);

/// Occupied-box law with a Poisson(-n log(1-p)) number of balls. When
/// t_cap is absent it is chosen so that the Poisson tail is below 1e-15.
std::vector<double> occupancy_mixture(long n, double p, std::optional<long> t_cap = std::nullopt);

/// Drift and jump measure of an infinitely divisible law on the
/// nonnegative integers (negative binomial or Poisson).
class LevyCharacteristics {
 public:
  explicit LevyCharacteristics(const Distribution& d);

  const Scalar& alpha() const { return alpha_; }
  /// nu({k}); exact for rational parameters.
  Scalar weight(long k) const;
  /// G(k) = nu([k, inf)) for k >= 1; G(k) = G(1) for k <= 1.
  double tail(long k) const;
  double total_mass() const;
  /// Largest k >= 1 with G(k) > y, or 0 when y >= G(1).
  long inverse_tail(double y) const;

 private:
  void build_tail_table();

  Family family_;
  Scalar alpha_;
  Scalar r_;
  Scalar p_;
  Scalar lambda_;
  std::vector<double> tail_;  // tail_[k-1] = G(k), decreasing
};

/// Jump-measure tail ratio G1(k)/G2(k) for two negative binomials.
double levy_tail_ratio(const Scalar& r1, const Scalar& p1, const Scalar& r2, const Scalar& p2, long k);

/// G1 <= G2 pointwise, decided from the value at k = 1 and monotonicity of
/// the tail ratio (nonincreasing exactly when p1 >= p2).
bool levy_tails_ordered(const Scalar& r1, const Scalar& p1, const Scalar& r2, const Scalar& p2);

/// Compound-Poisson coupling of two negative binomials through one Poisson
/// point process on (0, G2(1)). ConditionsViolated unless the jump tails
/// are ordered.
std::vector<CouplingSample> levy_coupling_negbinom(const Scalar& r1, const Scalar& p1, const Scalar& r2,
                                                   const Scalar& p2, std::uint64_t seed, long count,
                                                   bool with_trace = false);

/// x2 = X0 + ... + Xn ~ Poisson(lambda), x1 = sum min(Xi, 1) ~ b(n,p), with
/// Xi ~ Poisson(-log(1-p)). Requires (1-p)^n >= exp(-lambda).
std::vector<CouplingSample> binom_poisson_coupling(long n, const Scalar& p, const Scalar& lambda,
                                                   std::uint64_t seed, long count, bool with_trace = false);

/// Inverse-cdf transform of one common uniform per sample.
std::vector<CouplingSample> quantile_coupling(const Distribution& p, const Distribution& q,
                                              std::uint64_t seed, long count);

/// Left-continuous inverse of the cdf at u in [0,1).
long quantile(MassTable& table, double u);

struct CouplingSummary {
  long samples = 0;
  long violations = 0;
  std::optional<long> first_violation;
  ChiSquareResult x1_fit;
  ChiSquareResult x2_fit;
};

CouplingSummary summarize(const std::vector<CouplingSample>& samples, const Distribution& first,
                          const Distribution& second);

}  // namespace stochord
