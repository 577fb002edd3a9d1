#include "stochord/likelihood.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stochord/error.hpp"

namespace stochord {

namespace {

constexpr long kMaxCap = 1'000'000;

int sign_of(std::partial_ordering o) {
  if (o == std::partial_ordering::less) return -1;
  if (o == std::partial_ordering::greater) return 1;
  return 0;
}

Extended ratio(const Scalar& num, const Scalar& den) {
  if (den.is_zero()) return Extended::infinity();
  return Extended(num / den);
}

// pmf(k+1)/pmf(k) for a family with a closed form; requires pmf(k) > 0.
std::optional<Scalar> family_step(const Distribution& d, long k) {
  switch (d.family()) {
    case Family::Binomial: {
      const auto& a = d.as<BinomialParams>();
      if (k >= a.n) return Scalar(0);
      return Scalar::exact(a.n - k, k + 1) * a.p / (Scalar(1) - a.p);
    }
    case Family::NegBinomial: {
      const auto& a = d.as<NegBinomialParams>();
      return (a.r + Scalar(k)) / Scalar(k + 1) * (Scalar(1) - a.p);
    }
    case Family::Hypergeometric: {
      const auto& a = d.as<HypergeometricParams>();
      return Scalar::exact((a.black - k) * (a.n - k), (k + 1) * (a.white - a.n + k + 1));
    }
    case Family::Poisson:
      return d.as<PoissonParams>().lambda / Scalar(k + 1);
    case Family::PoissonBinomial:
      return std::nullopt;
  }
  return std::nullopt;
}

bool ratio_pair_supported(Family a, Family b) {
  auto is = [&](Family x, Family y) { return (a == x && b == y) || (a == y && b == x); };
  return is(Family::Binomial, Family::Binomial) || is(Family::NegBinomial, Family::NegBinomial) ||
         is(Family::Hypergeometric, Family::Hypergeometric) ||
         is(Family::Hypergeometric, Family::Binomial) || is(Family::Binomial, Family::Poisson) ||
         is(Family::Poisson, Family::NegBinomial) || is(Family::Poisson, Family::Poisson);
}

struct SignScan {
  Shape shape = Shape::Increasing;
  std::optional<std::size_t> turning_pos;  // index into the value list
  bool turning_beyond = false;
  bool has_increase = false;
  bool has_decrease = false;
};

// Classifies a sequence by the signs of its successive differences; ties
// belong to both phases. `tail_sign` is the sign of all differences beyond
// the last scanned value, when known.
SignScan classify(const std::vector<std::pair<long, Extended>>& values, int tail_sign) {
  SignScan out;
  int phase = 0;
  int changes = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const int s = values[i + 1].second.compare(values[i].second);
    if (s == 0) continue;
    (s > 0 ? out.has_increase : out.has_decrease) = true;
    if (phase == 0) {
      phase = s;
    } else if (s != phase) {
      if (++changes == 1) out.turning_pos = i;
      phase = s;
    }
  }
  if (tail_sign != 0) {
    (tail_sign > 0 ? out.has_increase : out.has_decrease) = true;
    if (phase != 0 && tail_sign != phase) {
      if (++changes == 1) out.turning_beyond = true;
    }
    if (phase == 0) phase = tail_sign;
  }
  if (changes >= 2) {
    out.shape = Shape::NotHalfMonotone;
  } else if (changes == 1) {
    out.shape = phase < 0 ? Shape::IncreasingThenDecreasing : Shape::DecreasingThenIncreasing;
  } else {
    out.shape = phase < 0 ? Shape::Decreasing : Shape::Increasing;
  }
  return out;
}

}  // namespace

double Extended::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

std::string Extended::to_string() const { return infinite_ ? "inf" : value_.to_string(); }

int Extended::compare(const Extended& o) const {
  if (infinite_ || o.infinite_) return static_cast<int>(infinite_) - static_cast<int>(o.infinite_);
  return sign_of(value_ <=> o.value_);
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::Increasing: return "increasing";
    case Shape::Decreasing: return "decreasing";
    case Shape::IncreasingThenDecreasing: return "increasing_then_decreasing";
    case Shape::DecreasingThenIncreasing: return "decreasing_then_increasing";
    case Shape::NotHalfMonotone: return "not_half_monotone";
  }
  return "unknown";
}

bool half_monotone(Shape s) { return s != Shape::NotHalfMonotone; }

std::optional<Extended> LikelihoodProfile::at(long k) const {
  auto it = std::lower_bound(values.begin(), values.end(), k,
                             [](const auto& v, long key) { return v.first < key; });
  if (it == values.end() || it->first != k) return std::nullopt;
  return it->second;
}

std::optional<TailBehavior> tail_behavior(const Distribution& p, const Distribution& q) {
  const auto sp = support(p);
  const auto sq = support(q);
  if (sp.finite() && sq.finite()) return std::nullopt;
  if (sp.finite()) return TailBehavior{0, Extended(Scalar(0)), *sp.k_max + 1};
  if (sq.finite()) return TailBehavior{0, Extended::infinity(), *sq.k_max + 1};

  // Both infinite: each side is a Poisson or a negative binomial with p < 1,
  // and lambda(k+1)/lambda(k) is monotone in k with a closed-form limit.
  auto from_sign = [](int s) {
    if (s < 0) return TailBehavior{-1, Extended(Scalar(0)), std::nullopt};
    if (s > 0) return TailBehavior{1, Extended::infinity(), std::nullopt};
    return TailBehavior{0, Extended(Scalar(1)), std::nullopt};
  };
  const bool p_nb = p.family() == Family::NegBinomial;
  const bool q_nb = q.family() == Family::NegBinomial;
  if (p_nb && q_nb) {
    const auto& a = p.as<NegBinomialParams>();
    const auto& b = q.as<NegBinomialParams>();
    // limit of the step ratio is (1-p1)/(1-p2); on a tie the approach
    // direction is decided by r1 vs r2.
    int s = sign_of(b.p <=> a.p);
    if (s == 0) s = sign_of(a.r <=> b.r);
    if (s == 0) {
      // Identical laws up to representation.
      return TailBehavior{0, Extended(Scalar(1)), std::nullopt};
    }
    return from_sign(s);
  }
  if (!p_nb && !q_nb) {
    const int s = sign_of(p.as<PoissonParams>().lambda <=> q.as<PoissonParams>().lambda);
    return from_sign(s);
  }
  return from_sign(p_nb ? 1 : -1);
}

long default_k_cap(const Distribution& p, const Distribution& q, double epsilon) {
  const auto joint = joint_support(p, q);
  if (joint.finite()) return *joint.k_max;
  MassTable tp(p);
  MassTable tq(q);
  long floor_k = joint.k_min;
  if (const auto tb = tail_behavior(p, q); tb && tb->constant_from) floor_k = *tb->constant_from;
  auto tail = [&](long k) { return tp.survival(k).to_double() + tq.survival(k).to_double(); };
  long hi = 16;
  while (hi < kMaxCap && !(tail(hi) < epsilon)) hi *= 2;
  if (hi >= kMaxCap) return std::max(floor_k, kMaxCap);
  long lo = hi / 2;
  while (lo + 1 < hi) {
    const long mid = lo + (hi - lo) / 2;
    (tail(mid) < epsilon ? hi : lo) = mid;
  }
  return std::max(hi, floor_k);
}

Scalar consecutive_ratio(const Distribution& p, const Distribution& q, long k) {
  if (!ratio_pair_supported(p.family(), q.family())) {
    throw Error(ErrorCode::UnsupportedPair, "no closed-form likelihood step for " +
                                                std::string(to_string(p.family())) + "/" +
                                                std::string(to_string(q.family())));
  }
  const auto sp = support(p);
  const auto sq = support(q);
  if (!sp.contains(k) || !sq.contains(k) || !sq.contains(k + 1)) {
    throw Error(ErrorCode::InvalidArgument,
                "consecutive ratio needs P({k}), Q({k}), Q({k+1}) > 0 at k=" + std::to_string(k));
  }
  return *family_step(p, k) / *family_step(q, k);
}

LikelihoodProfile likelihood_profile(const Distribution& p, const Distribution& q,
                                     std::optional<long> k_cap) {
  LikelihoodProfile out;
  out.k_range = joint_support(p, q);
  const auto tb = tail_behavior(p, q);
  if (!out.k_range.finite() && !tb && !k_cap) {
    throw Error(ErrorCode::UnboundedProfile, "infinite joint support needs a k_cap");
  }

  long last = 0;
  if (out.k_range.finite()) {
    last = *out.k_range.k_max;
    if (k_cap) last = std::min(last, *k_cap);
  } else {
    last = k_cap ? *k_cap : default_k_cap(p, q);
    if (tb && tb->constant_from) last = std::max(last, *tb->constant_from);
    out.k_cap = last;
  }

  MassTable tp(p);
  MassTable tq(q);
  for (long k = out.k_range.k_min; k <= last; ++k) {
    const Scalar a = tp.pmf(k);
    const Scalar b = tq.pmf(k);
    if (a.is_zero() && b.is_zero()) continue;
    out.values.emplace_back(k, ratio(a, b));
  }

  const bool cap_truncates = out.k_range.finite() ? last < *out.k_range.k_max : true;
  int tail_sign = 0;
  if (cap_truncates && tb) {
    tail_sign = tb->eventual_trend;
    out.tail_certified = true;
  } else if (!cap_truncates) {
    out.tail_certified = true;
  }

  const SignScan scan = classify(out.values, tail_sign);
  out.shape = scan.shape;
  if (scan.turning_pos) {
    out.turning_index = out.values[*scan.turning_pos].first;
  } else if (scan.turning_beyond) {
    // Walk the closed-form step ratio until lambda changes direction.
    long k = out.values.empty() ? out.k_range.k_min : out.values.back().first;
    while (k < 100 * kMaxCap) {
      if (sign_of(consecutive_ratio(p, q, k) <=> Scalar(1)) == tail_sign) break;
      ++k;
    }
    out.turning_index = k;
  }
  return out;
}

namespace {

Extended lambda_at(const Distribution& p, const Distribution& q, long k) {
  return ratio(pmf(p, k), pmf(q, k));
}

bool lr_from_profile(const LikelihoodProfile& prof, const Distribution& p, const Distribution& q) {
  const auto tb = tail_behavior(p, q);
  const bool truncated = !prof.k_range.finite();
  const SignScan scan = classify(prof.values, truncated && tb ? tb->eventual_trend : 0);
  return !scan.has_increase;
}

}  // namespace

TailConditions tail_conditions(const Distribution& p, const Distribution& q) {
  TailConditions out;
  const auto joint = joint_support(p, q);
  out.k_lower = joint.k_min;
  out.k_upper = joint.k_max;
  out.left_value = lambda_at(p, q, joint.k_min);
  if (joint.finite()) {
    out.right_value = lambda_at(p, q, *joint.k_max);
    out.rho = out.right_value;
  } else {
    const auto tb = tail_behavior(p, q);
    if (!tb) throw Error(ErrorCode::UnsupportedPair, "no closed-form right tail for this pair");
    out.right_value = tb->limit;
    out.right_is_limit = true;
  }
  out.left_holds = out.left_value.compare(Scalar(1)) >= 0;
  out.right_holds = out.right_value.compare(Scalar(1)) <= 0;
  return out;
}

MembershipResult in_H(const Distribution& p, const Distribution& q, std::optional<long> k_cap) {
  const auto prof = likelihood_profile(p, q, k_cap);
  MembershipResult out;
  out.certificate.shape = prof.shape;
  out.certificate.turning_index = prof.turning_index;
  out.certificate.tail_certified = prof.tail_certified;
  out.certificate.tails = tail_conditions(p, q);
  out.member = half_monotone(prof.shape) && out.certificate.tails.left_holds &&
               out.certificate.tails.right_holds;
  return out;
}

bool binomial_lr_closed_form(const BinomialParams& a, const BinomialParams& b) {
  if (a.p.is_zero()) return true;
  if (a.n > b.n) return false;
  // n1 p1 / (1-p1) <= n2 p2 / (1-p2), cross-multiplied so that p = 1 reads
  // as +inf on either side.
  const Scalar lhs = Scalar(a.n) * a.p * (Scalar(1) - b.p);
  const Scalar rhs = Scalar(b.n) * b.p * (Scalar(1) - a.p);
  return lhs <= rhs;
}

bool is_lr_ordered(const Distribution& p, const Distribution& q, std::optional<long> k_cap) {
  const auto prof = likelihood_profile(p, q, k_cap);
  const bool scanned = lr_from_profile(prof, p, q);
  if (p.family() == Family::Binomial && q.family() == Family::Binomial) {
    const bool closed = binomial_lr_closed_form(p.as<BinomialParams>(), q.as<BinomialParams>());
    if (closed != scanned) {
      throw std::logic_error("likelihood scan disagrees with the binomial closed form for " +
                             p.describe() + " vs " + q.describe());
    }
  }
  return scanned;
}

bool lr_two_point_check(const Distribution& p, const Distribution& q) {
  const auto joint = joint_support(p, q);
  if (!joint.finite()) throw Error(ErrorCode::InfiniteSupport, "two-point check needs finite support");
  MassTable tp(p);
  MassTable tq(q);
  std::vector<Scalar> a;
  std::vector<Scalar> b;
  for (long k = joint.k_min; k <= *joint.k_max; ++k) {
    a.push_back(tp.pmf(k));
    b.push_back(tq.pmf(k));
  }
  // P(j|B) <= Q(j|B) for B = {i < j}  <=>  P(j) Q(i) <= P(i) Q(j)
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] + a[j]).is_zero() || (b[i] + b[j]).is_zero()) continue;
      if (a[j] * b[i] > a[i] * b[j]) return false;
    }
  }
  return true;
}

}  // namespace stochord
