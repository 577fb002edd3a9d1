#include "stochord/oracle.hpp"

#include <algorithm>

#include "stochord/error.hpp"
#include "stochord/likelihood.hpp"

namespace stochord {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LeSt: return "le_st";
    case Relation::GeSt: return "ge_st";
    case Relation::Equal: return "equal";
    case Relation::Incomparable: return "incomparable";
    case Relation::Unknown: return "unknown";
  }
  return "unknown";
}

Relation mirror(Relation r) {
  if (r == Relation::LeSt) return Relation::GeSt;
  if (r == Relation::GeSt) return Relation::LeSt;
  return r;
}

namespace {

// Accumulates the sign pattern of F_P(k) - F_Q(k) over increasing k.
class SignPattern {
 public:
  void push(long k, int s) {
    if (s == 0) return;
    if (last_sign_ != 0 && s != last_sign_) {
      crossings_.push_back(k);
      if (!witnesses_) {
        witnesses_ = s > 0 ? Witnesses{k, last_k_} : Witnesses{last_k_, k};
      }
    }
    (s > 0 ? seen_plus_ : seen_minus_) = true;
    last_sign_ = s;
    last_k_ = k;
  }

  Relation relation() const {
    if (seen_plus_ && seen_minus_) return Relation::Incomparable;
    if (seen_plus_) return Relation::LeSt;
    if (seen_minus_) return Relation::GeSt;
    return Relation::Equal;
  }

  bool incomparable() const { return seen_plus_ && seen_minus_; }
  const std::vector<long>& crossings() const { return crossings_; }
  const std::optional<Witnesses>& witnesses() const { return witnesses_; }

 private:
  int last_sign_ = 0;
  long last_k_ = 0;
  bool seen_plus_ = false;
  bool seen_minus_ = false;
  std::vector<long> crossings_;
  std::optional<Witnesses> witnesses_;
};

Extended lambda_at(MassTable& p, MassTable& q, long k) {
  const Scalar a = p.pmf(k);
  const Scalar b = q.pmf(k);
  if (b.is_zero()) return a.is_zero() ? Extended(Scalar(1)) : Extended::infinity();
  return Extended(a / b);
}

bool tail_certified(MassTable& p, MassTable& q, long from) {
  const Distribution& dp = p.distribution();
  const Distribution& dq = q.distribution();
  const auto joint = joint_support(dp, dq);
  if (joint.finite()) return from > *joint.k_max;
  const auto tb = tail_behavior(dp, dq);
  if (!tb) return false;

  if (tb->constant_from) {
    // lambda is constant (0 or +inf) from constant_from on; check the gap.
    const int limit_side = tb->limit.compare(Scalar(1));
    for (long k = from; k < *tb->constant_from; ++k) {
      const Scalar a = p.pmf(k);
      const Scalar b = q.pmf(k);
      if (a.is_zero() && b.is_zero()) continue;
      const int side = lambda_at(p, q, k).compare(Scalar(1));
      if (side != 0 && side != limit_side) return false;
    }
    return true;
  }

  if (tb->eventual_trend == 0) return true;
  // Both infinite: the step ratio is monotone, so lambda is monotone on
  // [from, inf) once the step ratio sits on the side of its limit.
  const Scalar step = consecutive_ratio(dp, dq, from);
  const auto c = step <=> Scalar(1);
  const int step_side = c < 0 ? -1 : (c > 0 ? 1 : 0);
  if (step_side != 0 && step_side != tb->eventual_trend) return false;
  const int side = lambda_at(p, q, from).compare(Scalar(1));
  // decreasing towards 0: need lambda(from) <= 1; increasing to inf: >= 1.
  return side == 0 || side == tb->eventual_trend;
}

DominanceReport scan(MassTable& p, MassTable& q, long from, long to) {
  SignPattern pattern;
  for (long k = from; k <= to; ++k) pattern.push(k, cdf_difference_sign(p, q, k));
  DominanceReport out;
  out.relation = pattern.relation();
  out.crossings = pattern.crossings();
  out.witnesses = pattern.witnesses();
  return out;
}

DominanceReport truncated_report(MassTable& p, MassTable& q, long k_cap, double epsilon,
                                 bool& certified) {
  const auto joint = joint_support(p.distribution(), q.distribution());
  DominanceReport out = scan(p, q, joint.k_min, k_cap);
  TruncatedMode mode;
  mode.k_cap = k_cap;
  mode.tail_bound = p.survival(k_cap + 1).to_double() + q.survival(k_cap + 1).to_double();
  certified = out.relation == Relation::Incomparable || tail_certified(p, q, k_cap + 1);
  mode.tail_certified = certified;
  out.mode = mode;
  if (!certified && mode.tail_bound > epsilon) {
    out.diagnostic = "tail mass " + format_double(mode.tail_bound) + " beyond k_cap " +
                     std::to_string(k_cap) + " exceeds epsilon and the tail is not certified";
    out.relation = Relation::Unknown;
  } else if (!certified) {
    out.diagnostic = "verdict relies on truncation at k_cap " + std::to_string(k_cap);
  }
  return out;
}

}  // namespace

DominanceReport dominance_exact(MassTable& p, MassTable& q) {
  const auto joint = joint_support(p.distribution(), q.distribution());
  if (!joint.finite()) throw Error(ErrorCode::InfiniteSupport, "exact dominance needs finite supports");
  DominanceReport out = scan(p, q, joint.k_min, *joint.k_max);
  out.mode = ExactMode{};
  return out;
}

DominanceReport dominance_exact(const Distribution& p, const Distribution& q) {
  MassTable tp(p);
  MassTable tq(q);
  return dominance_exact(tp, tq);
}

DominanceReport dominance_truncated(const Distribution& p, const Distribution& q, long k_cap,
                                    double epsilon) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  MassTable tp(p);
  MassTable tq(q);
  bool certified = false;
  return truncated_report(tp, tq, k_cap, epsilon, certified);
}

DominanceReport dominance(MassTable& p, MassTable& q, const OraclePolicy& policy) {
  if (!(policy.epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const auto joint = joint_support(p.distribution(), q.distribution());
  if (joint.finite()) return dominance_exact(p, q);

  bool certified = false;
  if (policy.k_cap) return truncated_report(p, q, *policy.k_cap, policy.epsilon, certified);

  long cap = default_k_cap(p.distribution(), q.distribution(), policy.epsilon);
  DominanceReport out = truncated_report(p, q, cap, policy.epsilon, certified);
  while (!certified && cap < policy.max_k_cap) {
    cap = std::min(cap * 2, policy.max_k_cap);
    out = truncated_report(p, q, cap, policy.epsilon, certified);
  }
  return out;
}

DominanceReport dominance(const Distribution& p, const Distribution& q, const OraclePolicy& policy) {
  MassTable tp(p);
  MassTable tq(q);
  return dominance(tp, tq, policy);
}

std::vector<long> crossing_points(const Distribution& p, const Distribution& q, std::optional<long> k_cap) {
  OraclePolicy policy;
  policy.k_cap = k_cap;
  return dominance(p, q, policy).crossings;
}

bool tail_sign_certified(const Distribution& p, const Distribution& q, long from) {
  MassTable tp(p);
  MassTable tq(q);
  return tail_certified(tp, tq, from);
}

}  // namespace stochord
