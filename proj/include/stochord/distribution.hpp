#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stochord/scalar.hpp"

namespace stochord {

enum class Family { Binomial, NegBinomial, Hypergeometric, Poisson, PoissonBinomial };

std::string_view to_string(Family f);

struct BinomialParams {
  long n;
  Scalar p;
};

struct NegBinomialParams {
  Scalar r;
  Scalar p;
};

struct HypergeometricParams {
  long black;  // B
  long white;  // W
  long n;
};

struct PoissonParams {
  Scalar lambda;
};

/// Nonincreasing success probabilities of independent Bernoulli summands.
struct PoissonBinomialParams {
  std::vector<Scalar> p;
};

/// One of the supported discrete families on the nonnegative integers.
/// Parameters are validated by the factories; a constructed value is
/// always valid.
class Distribution {
 public:
  using Params = std::variant<BinomialParams, NegBinomialParams, HypergeometricParams,
                              PoissonParams, PoissonBinomialParams>;

  static Distribution binomial(long n, Scalar p);
  static Distribution negbinomial(Scalar r, Scalar p);
  static Distribution hypergeometric(long black, long white, long n);
  static Distribution poisson(Scalar lambda);
  static Distribution poisson_binomial(std::vector<Scalar> p);

  Family family() const { return static_cast<Family>(params_.index()); }
  const Params& params() const { return params_; }

  template <class T>
  const T& as() const { return std::get<T>(params_); }
  template <class T>
  const T* try_as() const { return std::get_if<T>(&params_); }

  /// Same family with structurally identical parameters.
  bool identical(const Distribution& o) const;

  /// True when pmf, cdf and survival are computed in exact rationals.
  bool exact() const;

  /// Short human-readable name, e.g. "Binomial(18, 1/2)".
  std::string describe() const;

 private:
  explicit Distribution(Params p) : params_(std::move(p)) {}
  Params params_;
};

/// Support bounds; k_max is empty for infinite support.
struct SupportBounds {
  long k_min = 0;
  std::optional<long> k_max;

  bool finite() const { return k_max.has_value(); }
  bool contains(long k) const { return k >= k_min && (!k_max || k <= *k_max); }
};

SupportBounds support(const Distribution& d);

/// Joint support of P + Q.
SupportBounds joint_support(const Distribution& p, const Distribution& q);

Scalar pmf(const Distribution& d, long k);
/// P(X <= k).
Scalar cdf(const Distribution& d, long k);
/// P(X >= k).
Scalar survival(const Distribution& d, long k);

Scalar mean(const Distribution& d);

/// Law of a sum of independent Bernoulli(p_i) variables, by convolution.
std::vector<Scalar> poisson_binomial_pmf(std::span<const Scalar> p);

/// Incrementally extended pmf / cdf table for one distribution. Exact
/// families use the pmf recurrence in rationals; floating families use
/// Boost.Math so that far-tail survival values keep full relative
/// precision.
class MassTable {
 public:
  explicit MassTable(Distribution d);

  const Distribution& distribution() const { return dist_; }
  bool exact() const { return dist_.exact(); }

  /// Largest k currently tabulated.
  long size_hint() const { return static_cast<long>(pmf_.size()) - 1; }
  void extend_to(long k);

  Scalar pmf(long k);
  Scalar cdf(long k);
  Scalar survival(long k);

 private:
  Distribution dist_;
  SupportBounds support_;
  std::vector<Scalar> pmf_;
  std::vector<Scalar> cdf_;
};

/// Sign of F_P(k) - F_Q(k), evaluated without catastrophic cancellation in
/// the floating case.
int cdf_difference_sign(MassTable& p, MassTable& q, long k);

/// F_P(k) - F_Q(k) as a scalar (exact when both tables are exact).
Scalar cdf_difference(MassTable& p, MassTable& q, long k);

}  // namespace stochord
