#include "stochord/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stochord/error.hpp"
#include "stochord/rng.hpp"

namespace stochord {

namespace {

void require_probability(const Scalar& p, const char* name) {
  if (p < Scalar(0) || p > Scalar(1)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must lie in [0,1]");
  }
}

void require_count(long count) {
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "sample count must be nonnegative");
}

// (1-p1)^n1 >= (1-p2)^n2 and n1 <= n2.
void require_binomial_order(long n1, const Scalar& p1, long n2, const Scalar& p2) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidArgument, "sizes must be positive");
  require_probability(p1, "p1");
  require_probability(p2, "p2");
  if (n1 > n2) throw Error(ErrorCode::ConditionsViolated, "n1 <= n2 fails");
  const Scalar q1 = Scalar(1) - p1;
  const Scalar q2 = Scalar(1) - p2;
  bool left = true;
  if (q2.is_zero()) {
    left = true;
  } else if (q1.is_zero()) {
    left = false;
  } else if (q1.is_exact() && q2.is_exact()) {
    left = compare_powers(q1, Scalar(n1), q2, Scalar(n2)) >= 0;
  } else {
    // Floating boundary parameters such as p2 = 1 - (1-p1)^(n1/n2) are
    // accepted up to rounding.
    const double lhs = static_cast<double>(n1) * std::log(q1.to_double());
    const double rhs = static_cast<double>(n2) * std::log(q2.to_double());
    left = lhs >= rhs - 1e-12 * std::max(1.0, std::fabs(rhs));
  }
  if (!left) throw Error(ErrorCode::ConditionsViolated, "(1-p1)^n1 >= (1-p2)^n2 fails");
}

// Second-system parameters: p2' = 1 - (1-p1)^(n1/n2) and the thinning
// probability that lifts b(n2, p2') to b(n2, p2).
struct BinomialReduction {
  double rate = 0.0;  // expected number of balls, -n1 log(1-p1)
  double lift = 0.0;
  bool saturated = false;  // p1 = 1
};

BinomialReduction reduce(long n1, const Scalar& p1, long n2, const Scalar& p2) {
  BinomialReduction out;
  const double a = p1.to_double();
  const double b = p2.to_double();
  if (a >= 1.0) {
    out.saturated = true;
    return out;
  }
  out.rate = -static_cast<double>(n1) * std::log1p(-a);
  const double reduced = -std::expm1(static_cast<double>(n1) / static_cast<double>(n2) * std::log1p(-a));
  out.lift = reduced >= 1.0 ? 0.0 : std::clamp((b - reduced) / (1.0 - reduced), 0.0, 1.0);
  return out;
}

// Boxes labelled 1..n split into occupied and free lists.
class BoxSystem {
 public:
  explicit BoxSystem(long n) : free_(static_cast<std::size_t>(n)) {
    std::iota(free_.begin(), free_.end(), 1L);
  }
  long occupied() const { return static_cast<long>(occupied_.size()); }
  long size() const { return static_cast<long>(occupied_.size() + free_.size()); }

  long pick_occupied(Rng& rng) const { return occupied_[rng.below(occupied_.size())]; }

  long pick_free_and_fill(Rng& rng) {
    const std::size_t j = rng.below(free_.size());
    const long box = free_[j];
    free_[j] = free_.back();
    free_.pop_back();
    occupied_.push_back(box);
    return box;
  }

  // Uniform box; fills it when it was free.
  long pick_any(Rng& rng) {
    const std::size_t j = rng.below(static_cast<std::uint64_t>(size()));
    if (j < occupied_.size()) return occupied_[j];
    const std::size_t f = j - occupied_.size();
    const long box = free_[f];
    free_[f] = free_.back();
    free_.pop_back();
    occupied_.push_back(box);
    return box;
  }

 private:
  std::vector<long> occupied_;
  std::vector<long> free_;
};

// One ball into both systems with the coupled joint law.
std::array<long, 2> throw_coupled(BoxSystem& s1, BoxSystem& s2, Rng& rng) {
  const long n1 = s1.size();
  const long n2 = s2.size();
  const long a1 = s1.occupied();
  const long a2 = s2.occupied();
  if (a1 < a2 || a2 == n2) return {s1.pick_any(rng), s2.pick_any(rng)};
  const double both_occupied = static_cast<double>(a2) / static_cast<double>(n2);
  const double first_only = static_cast<double>(a1 * n2 - a2 * n1) / static_cast<double>(n1 * n2);
  const double u = rng.uniform();
  if (u < both_occupied) return {s1.pick_occupied(rng), s2.pick_occupied(rng)};
  if (u < both_occupied + first_only) return {s1.pick_occupied(rng), s2.pick_free_and_fill(rng)};
  return {s1.pick_free_and_fill(rng), s2.pick_free_and_fill(rng)};
}

}  // namespace

Rational OccupancyJoint::at(long r1, long r2) const {
  if (r1 < 1 || r1 > n1 || r2 < 1 || r2 > n2) return Rational(0);
  return weight[r1 <= a1 ? 0 : 1][r2 <= a2 ? 0 : 1];
}

Rational OccupancyJoint::block_mass(bool first_occupied, bool second_occupied) const {
  const long rows = first_occupied ? a1 : n1 - a1;
  const long cols = second_occupied ? a2 : n2 - a2;
  return weight[first_occupied ? 0 : 1][second_occupied ? 0 : 1] * Rational(rows * cols);
}

OccupancyJoint q_joint(long a1, long a2, long n1, long n2) {
  if (a1 < 0 || a2 < 0 || a1 > n1 || n1 > n2 || a2 > n2 || n1 < 1 || (a1 >= a2 && a2 == n2)) {
    throw Error(ErrorCode::InvalidOccupancy,
                "need 0 <= a1 <= n1 <= n2, 0 <= a2 <= n2, and a2 < n2 when a1 >= a2");
  }
  OccupancyJoint out{a1, a2, n1, n2, {}};
  if (a1 < a2) {
    const Rational w(1, n1 * n2);
    out.weight = {{{w, w}, {w, w}}};
    return out;
  }
  Rational occupied_occupied(0);
  Rational occupied_free(0);
  if (a1 > 0) {
    occupied_occupied = Rational(1, a1 * n2);
    occupied_free = Rational(a1 * n2 - a2 * n1, a1 * n1 * n2 * (n2 - a2));
  }
  const Rational free_free(1, (n2 - a2) * n1);
  out.weight = {{{occupied_occupied, occupied_free}, {Rational(0), free_free}}};
  for (auto& row : out.weight) {
    for (auto& w : row) w.canonicalize();
  }
  return out;
}

std::vector<CouplingSample> binomial_explicit_coupling(long n1, const Scalar& p1, long n2, const Scalar& p2,
                                                       std::uint64_t seed, long count, bool with_trace) {
  require_count(count);
  require_binomial_order(n1, p1, n2, p2);
  const BinomialReduction red = reduce(n1, p1, n2, p2);
  std::vector<CouplingSample> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    CouplingSample& s = out[static_cast<std::size_t>(i)];
    if (red.saturated) {
      s.x1 = n1;
      s.x2 = n2;
      continue;
    }
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    const long balls = sample_poisson(rng, red.rate);
    BoxSystem s1(n1);
    BoxSystem s2(n2);
    CouplingTrace trace;
    trace.events = balls;
    for (long t = 0; t < balls; ++t) {
      const auto hit = throw_coupled(s1, s2, rng);
      if (with_trace) {
        trace.draws.push_back(hit);
        trace.occupancy.push_back({s1.occupied(), s2.occupied()});
      }
    }
    s.x1 = s1.occupied();
    s.x2 = s2.occupied() + sample_binomial(rng, n2 - s2.occupied(), red.lift);
    if (with_trace) s.trace = std::move(trace);
  }
  return out;
}

std::vector<CouplingSample> binomial_occupancy_coupling(long n1, const Scalar& p1, long n2, const Scalar& p2,
                                                        std::uint64_t seed, long count, bool with_trace) {
  require_count(count);
  require_binomial_order(n1, p1, n2, p2);
  const BinomialReduction red = reduce(n1, p1, n2, p2);
  std::vector<CouplingSample> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    CouplingSample& s = out[static_cast<std::size_t>(i)];
    if (red.saturated) {
      s.x1 = n1;
      s.x2 = n2;
      continue;
    }
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    const long balls = sample_poisson(rng, red.rate);
    long k1 = 0;
    long k2 = 0;
    CouplingTrace trace;
    trace.events = balls;
    for (long t = 0; t < balls; ++t) {
      // Moving up has probability 1 - k/n; for equal states the first
      // chain moves only if the second does.
      const double u = rng.uniform();
      if (u * static_cast<double>(n1) >= static_cast<double>(k1)) ++k1;
      if (u * static_cast<double>(n2) >= static_cast<double>(k2)) ++k2;
      if (with_trace) trace.occupancy.push_back({k1, k2});
    }
    s.x1 = k1;
    s.x2 = k2 + sample_binomial(rng, n2 - k2, red.lift);
    if (with_trace) s.trace = std::move(trace);
  }
  return out;
}

Rational occupancy_transition(long n, long k, long l) {
  if (n < 1 || k < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "state outside 0..n");
  if (l == k) return Rational(k, n);
  if (l == k + 1) return Rational(n - k, n);
  return Rational(0);
}

Rational occupancy_upper_tail(long n, long l, long k) {
  Rational out(0);
  for (long j = std::max(l, k); j <= std::min(n, k + 1); ++j) out += occupancy_transition(n, k, j);
  out.canonicalize();
  return out;
}

std::vector<Rational> occupancy_pushforward(long n, long t) {
  if (n < 1 || t < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and t >= 0");
  std::vector<Rational> dist(static_cast<std::size_t>(n + 1), Rational(0));
  dist[0] = 1;
  for (long step = 0; step < t; ++step) {
    std::vector<Rational> next(dist.size(), Rational(0));
    for (long k = 0; k <= n; ++k) {
      const Rational& m = dist[static_cast<std::size_t>(k)];
      if (m == 0) continue;
      next[static_cast<std::size_t>(k)] += m * Rational(k, n);
      if (k < n) next[static_cast<std::size_t>(k + 1)] += m * Rational(n - k, n);
    }
    for (auto& x : next) x.canonicalize();
    dist = std::move(next);
  }
  return dist;
}

std::vector<double> occupancy_mixture(long n, double p, std::optional<long> t_cap) {
  if (n < 1 || !(p > 0 && p < 1)) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and p in (0,1)");
  const double lambda = -static_cast<double>(n) * std::log1p(-p);
  std::vector<double> dist(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> mix(dist.size(), 0.0);
  dist[0] = 1.0;
  double weight = std::exp(-lambda);
  double used = 0.0;
  const long cap = t_cap.value_or(100000);
  for (long t = 0; t <= cap; ++t) {
    for (std::size_t k = 0; k < dist.size(); ++k) mix[k] += weight * dist[k];
    used += weight;
    if (!t_cap && static_cast<double>(t) > lambda && 1.0 - used < 1e-15) break;
    std::vector<double> next(dist.size(), 0.0);
    for (long k = 0; k <= n; ++k) {
      const double m = dist[static_cast<std::size_t>(k)];
      next[static_cast<std::size_t>(k)] += m * static_cast<double>(k) / static_cast<double>(n);
      if (k < n) next[static_cast<std::size_t>(k + 1)] += m * static_cast<double>(n - k) / static_cast<double>(n);
    }
    dist = std::move(next);
    weight *= lambda / static_cast<double>(t + 1);
  }
  return mix;
}

LevyCharacteristics::LevyCharacteristics(const Distribution& d) : family_(d.family()) {
  if (const auto* nb = d.try_as<NegBinomialParams>()) {
    r_ = nb->r;
    p_ = nb->p;
  } else if (const auto* po = d.try_as<PoissonParams>()) {
    lambda_ = po->lambda;
  } else {
    throw Error(ErrorCode::UnsupportedFamily, "jump measure defined for negative binomial and Poisson only");
  }
  build_tail_table();
}

Scalar LevyCharacteristics::weight(long k) const {
  if (k < 1) return Scalar(0);
  if (family_ == Family::Poisson) return k == 1 ? lambda_ : Scalar(0);
  return r_ * pow(Scalar(1) - p_, static_cast<unsigned long>(k)) / Scalar(k);
}

void LevyCharacteristics::build_tail_table() {
  if (family_ == Family::Poisson) {
    tail_ = {lambda_.to_double()};
    return;
  }
  const double q = 1.0 - p_.to_double();
  if (q <= 0.0) return;
  const double r = r_.to_double();
  std::vector<double> weights;
  double power = q;
  for (long k = 1; k <= 10'000'000; ++k) {
    const double term = r * power / static_cast<double>(k);
    if (term < 1e-300) break;
    weights.push_back(term);
    power *= q;
  }
  tail_.assign(weights.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = weights.size(); i-- > 0;) {
    acc += weights[i];
    tail_[i] = acc;
  }
}

double LevyCharacteristics::tail(long k) const {
  const long idx = std::max(k, 1L) - 1;
  return idx < static_cast<long>(tail_.size()) ? tail_[static_cast<std::size_t>(idx)] : 0.0;
}

double LevyCharacteristics::total_mass() const { return tail(1); }

long LevyCharacteristics::inverse_tail(double y) const {
  const auto it = std::partition_point(tail_.begin(), tail_.end(), [y](double g) { return g > y; });
  return static_cast<long>(it - tail_.begin());
}

double levy_tail_ratio(const Scalar& r1, const Scalar& p1, const Scalar& r2, const Scalar& p2, long k) {
  const LevyCharacteristics a(Distribution::negbinomial(r1, p1));
  const LevyCharacteristics b(Distribution::negbinomial(r2, p2));
  return a.tail(k) / b.tail(k);
}

bool levy_tails_ordered(const Scalar& r1, const Scalar& p1, const Scalar& r2, const Scalar& p2) {
  const LevyCharacteristics a(Distribution::negbinomial(r1, p1));
  const LevyCharacteristics b(Distribution::negbinomial(r2, p2));
  for (long k = 1; a.tail(k) > 0.0; ++k) {
    if (a.tail(k) > b.tail(k) * (1.0 + 1e-12)) return false;
  }
  return true;
}

std::vector<CouplingSample> levy_coupling_negbinom(const Scalar& r1, const Scalar& p1, const Scalar& r2,
                                                   const Scalar& p2, std::uint64_t seed, long count,
                                                   bool with_trace) {
  require_count(count);
  const LevyCharacteristics a(Distribution::negbinomial(r1, p1));
  const LevyCharacteristics b(Distribution::negbinomial(r2, p2));
  if (!levy_tails_ordered(r1, p1, r2, p2)) {
    throw Error(ErrorCode::ConditionsViolated, "jump measure tails are not ordered (p1 >= p2 and p1^r1 >= p2^r2)");
  }
  const double window = b.total_mass();
  std::vector<CouplingSample> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    CouplingSample& s = out[static_cast<std::size_t>(i)];
    const long m = sample_poisson(rng, window);
    CouplingTrace trace;
    trace.events = m;
    for (long j = 0; j < m; ++j) {
      const double y = rng.uniform() * window;
      s.x1 += a.inverse_tail(y);
      s.x2 += b.inverse_tail(y);
      if (with_trace) trace.points.push_back(y);
    }
    if (with_trace) s.trace = std::move(trace);
  }
  return out;
}

std::vector<CouplingSample> binom_poisson_coupling(long n, const Scalar& p, const Scalar& lambda,
                                                   std::uint64_t seed, long count, bool with_trace) {
  require_count(count);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  require_probability(p, "p");
  if (!(lambda > Scalar(0))) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const double pd = p.to_double();
  const double lam = lambda.to_double();
  const double per_box = pd >= 1.0 ? INFINITY : -std::log1p(-pd);
  if (!(static_cast<double>(n) * per_box <= lam)) {
    throw Error(ErrorCode::ConditionsViolated, "(1-p)^n >= exp(-lambda) fails");
  }
  const double rest = std::max(0.0, lam - static_cast<double>(n) * per_box);
  std::vector<CouplingSample> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    CouplingSample& s = out[static_cast<std::size_t>(i)];
    CouplingTrace trace;
    const long x0 = sample_poisson(rng, rest);
    s.x2 = x0;
    if (with_trace) trace.counts.push_back(x0);
    for (long j = 0; j < n; ++j) {
      const long xj = sample_poisson(rng, per_box);
      s.x2 += xj;
      s.x1 += std::min(xj, 1L);
      if (with_trace) trace.counts.push_back(xj);
    }
    if (with_trace) s.trace = std::move(trace);
  }
  return out;
}

long quantile(MassTable& table, double u) {
  // Smallest k with F(k) >= u, i.e. S(k+1) <= 1 - u; 1 - u is exact for
  // uniforms on the 2^-53 grid.
  const double v = 1.0 - u;
  const SupportBounds sup = support(table.distribution());
  long k = sup.k_min;
  while (!(sup.k_max && k >= *sup.k_max)) {
    if (table.survival(k + 1).to_double() <= v) break;
    ++k;
  }
  return k;
}

std::vector<CouplingSample> quantile_coupling(const Distribution& p, const Distribution& q, std::uint64_t seed,
                                              long count) {
  require_count(count);
  MassTable tp(p);
  MassTable tq(q);
  std::vector<CouplingSample> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    const double u = rng.uniform();
    out[static_cast<std::size_t>(i)].x1 = quantile(tp, u);
    out[static_cast<std::size_t>(i)].x2 = quantile(tq, u);
  }
  return out;
}

CouplingSummary summarize(const std::vector<CouplingSample>& samples, const Distribution& first,
                          const Distribution& second) {
  CouplingSummary out;
  out.samples = static_cast<long>(samples.size());
  std::map<long, long> c1;
  std::map<long, long> c2;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    ++c1[s.x1];
    ++c2[s.x2];
    if (s.x1 > s.x2) {
      ++out.violations;
      if (!out.first_violation) out.first_violation = static_cast<long>(i);
    }
  }
  if (!samples.empty()) {
    out.x1_fit = chi_square_test(c1, first);
    out.x2_fit = chi_square_test(c2, second);
  }
  return out;
}

}  // namespace stochord
