#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stochord/distribution.hpp"

namespace stochord {

enum class Relation { LeSt, GeSt, Equal, Incomparable, Unknown };

std::string_view to_string(Relation r);
Relation mirror(Relation r);

/// Crossing witnesses in terms of upper tails T(k) = P(X > k):
/// T_P(k_minus) < T_Q(k_minus) and T_P(k_plus) > T_Q(k_plus). A k_plus
/// violates P <=st Q and a k_minus violates Q <=st P.
struct Witnesses {
  long k_minus = 0;
  long k_plus = 0;
};

struct ExactMode {};

struct TruncatedMode {
  long k_cap = 0;
  double tail_bound = 0.0;  // P(X > k_cap) + Q(Y > k_cap)
  /// lambda - 1 was shown to keep a constant sign beyond k_cap, so the
  /// verdict does not depend on the truncation.
  bool tail_certified = false;
};

struct DominanceReport {
  Relation relation = Relation::Unknown;
  /// k where the sign of F_P(k) - F_Q(k) changes (first k of the new sign).
  std::vector<long> crossings;
  std::variant<ExactMode, TruncatedMode> mode;
  std::optional<Witnesses> witnesses;
  std::string diagnostic;

  bool exact_mode() const { return std::holds_alternative<ExactMode>(mode); }
};

struct OraclePolicy {
  std::optional<long> k_cap;  // fixed cap; otherwise chosen adaptively
  double epsilon = 1e-12;
  long max_k_cap = 1'000'000;
};

/// Full scan of F_P - F_Q on a finite joint support. Throws InfiniteSupport
/// otherwise.
DominanceReport dominance_exact(const Distribution& p, const Distribution& q);
DominanceReport dominance_exact(MassTable& p, MassTable& q);

/// Scan up to k_cap. Without a tail certificate, a definite relation needs
/// the mass beyond k_cap to be at most epsilon; otherwise Unknown.
DominanceReport dominance_truncated(const Distribution& p, const Distribution& q, long k_cap,
                                    double epsilon);

/// Exact scan on finite supports; on infinite supports a truncated scan that
/// grows the cap (unless fixed by the policy) until the tail is certified.
DominanceReport dominance(const Distribution& p, const Distribution& q, const OraclePolicy& policy = {});
DominanceReport dominance(MassTable& p, MassTable& q, const OraclePolicy& policy = {});

std::vector<long> crossing_points(const Distribution& p, const Distribution& q,
                                  std::optional<long> k_cap = std::nullopt);

/// True when lambda(k) - 1 keeps a constant weak sign for every k >= from.
bool tail_sign_certified(const Distribution& p, const Distribution& q, long from);

}  // namespace stochord
