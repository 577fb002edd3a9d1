#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stochord/distribution.hpp"

namespace stochord {

/// A value in [0, +inf]. Infinity arises as P({k})/Q({k}) with Q({k}) = 0.
class Extended {
 public:
  Extended() = default;
  Extended(Scalar v) : value_(std::move(v)) {}  // NOLINT
  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  bool infinite() const { return infinite_; }
  const Scalar& value() const { return value_; }
  double to_double() const;
  std::string to_string() const;

  /// Three-way comparison; +inf equals +inf and exceeds every finite value.
  int compare(const Extended& o) const;
  int compare(const Scalar& o) const { return compare(Extended(o)); }

 private:
  bool infinite_ = false;
  Scalar value_;
};

enum class Shape {
  Increasing,
  Decreasing,
  IncreasingThenDecreasing,
  DecreasingThenIncreasing,
  NotHalfMonotone,
};

std::string_view to_string(Shape s);
bool half_monotone(Shape s);

/// lambda(k) = P({k})/Q({k}) on the joint support of P+Q.
struct LikelihoodProfile {
  SupportBounds k_range;                        // joint support
  std::vector<std::pair<long, Extended>> values;  // scanned points, increasing k
  Shape shape = Shape::Increasing;
  std::optional<long> turning_index;
  /// The shape was completed with the closed-form behaviour beyond the
  /// scanned range and does not depend on the cap.
  bool tail_certified = false;
  std::optional<long> k_cap;  // set when the joint support is infinite

  /// lambda at k, or nullopt when k is not a scanned support point.
  std::optional<Extended> at(long k) const;
};

/// Behaviour of lambda beyond a finite scan, known in closed form for every
/// pair with infinite joint support built from the supported families.
struct TailBehavior {
  /// Eventual sign of lambda(k+1) - lambda(k) (0: eventually constant).
  int eventual_trend = 0;
  Extended limit;
  /// For finite-vs-infinite pairs lambda is constant from here on.
  std::optional<long> constant_from;
};

std::optional<TailBehavior> tail_behavior(const Distribution& p, const Distribution& q);

/// Smallest k with S_P(k) + S_Q(k) < epsilon, by doubling search, capped
/// at one million. Finite joint supports return their maximum.
long default_k_cap(const Distribution& p, const Distribution& q, double epsilon = 1e-12);

LikelihoodProfile likelihood_profile(const Distribution& p, const Distribution& q,
                                     std::optional<long> k_cap = std::nullopt);

/// lambda(k+1)/lambda(k) through the family closed forms. Defined for
/// binomial/binomial, negbinomial/negbinomial, hypergeometric/hypergeometric,
/// hypergeometric/binomial, binomial/poisson, poisson/negbinomial, their
/// reverses, and poisson/poisson. Requires P({k}), Q({k}), Q({k+1}) > 0.
Scalar consecutive_ratio(const Distribution& p, const Distribution& q, long k);

/// Tail conditions: lambda(k_*) >= 1 on the left, lambda(k^*) <= 1 on the
/// right (k^* = +inf read as the limit of lambda).
struct TailConditions {
  long k_lower = 0;
  std::optional<long> k_upper;
  Extended left_value;
  Extended right_value;
  bool right_is_limit = false;
  /// Extreme right tail survival ratio; only available for finite support,
  /// where it equals lambda(k^*).
  std::optional<Extended> rho;
  bool left_holds = false;
  bool right_holds = false;
};

TailConditions tail_conditions(const Distribution& p, const Distribution& q);

struct HmlrCertificate {
  Shape shape = Shape::Increasing;
  std::optional<long> turning_index;
  TailConditions tails;
  bool tail_certified = false;
};

struct MembershipResult {
  bool member = false;
  HmlrCertificate certificate;
};

/// Membership of (P,Q) in the class of half-monotone likelihood ratio pairs
/// satisfying both tail conditions, which implies P <=st Q.
MembershipResult in_H(const Distribution& p, const Distribution& q,
                      std::optional<long> k_cap = std::nullopt);

/// lambda nonincreasing on the joint support. For two binomials the scan is
/// cross-checked against the closed-form criterion.
bool is_lr_ordered(const Distribution& p, const Distribution& q,
                   std::optional<long> k_cap = std::nullopt);

/// Closed-form binomial criterion: p1 = 0, or n1 <= n2 and
/// n1 p1/(1-p1) <= n2 p2/(1-p2).
bool binomial_lr_closed_form(const BinomialParams& a, const BinomialParams& b);

/// For every two-point set B = {i,j} with P(B), Q(B) > 0, checks
/// P(.|B) <=st Q(.|B). Finite joint support only.
bool lr_two_point_check(const Distribution& p, const Distribution& q);

}  // namespace stochord
