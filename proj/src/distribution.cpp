#include "stochord/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/negative_binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "stochord/error.hpp"

namespace stochord {

namespace bm = boost::math;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidSpec, what);
}

bool in_unit_interval(const Scalar& p) { return p >= Scalar(0) && p <= Scalar(1); }

bool exact_positive_integer(const Scalar& r) {
  return r.is_exact() && r.is_integer() && r.sign() > 0 && r.rational().get_num().fits_slong_p();
}

Scalar one_minus(const Scalar& p) { return Scalar(1) - p; }

// P(X <= k) of a Boost distribution, with k < 0 mapped to zero.
template <class Dist>
double boost_cdf(const Dist& d, long k) {
  if (k < 0) return 0.0;
  return bm::cdf(d, static_cast<double>(k));
}

// P(X >= k).
template <class Dist>
double boost_survival(const Dist& d, long k) {
  if (k <= 0) return 1.0;
  return bm::cdf(bm::complement(d, static_cast<double>(k - 1)));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Binomial: return "binomial";
    case Family::NegBinomial: return "negbinomial";
    case Family::Hypergeometric: return "hypergeometric";
    case Family::Poisson: return "poisson";
    case Family::PoissonBinomial: return "poisson_binomial";
  }
  return "unknown";
}

Distribution Distribution::binomial(long n, Scalar p) {
  require(n >= 1, "binomial n must be a positive integer");
  require(in_unit_interval(p), "binomial p must lie in [0,1]");
  return Distribution(BinomialParams{n, std::move(p)});
}

Distribution Distribution::negbinomial(Scalar r, Scalar p) {
  require(r.sign() > 0, "negative binomial r must be positive");
  require(p.sign() > 0 && p <= Scalar(1), "negative binomial p must lie in (0,1]");
  return Distribution(NegBinomialParams{std::move(r), std::move(p)});
}

Distribution Distribution::hypergeometric(long black, long white, long n) {
  require(black >= 0 && white >= 0, "hypergeometric B and W must be nonnegative");
  require(n >= 1 && n <= black + white, "hypergeometric n must satisfy 1 <= n <= B+W");
  return Distribution(HypergeometricParams{black, white, n});
}

Distribution Distribution::poisson(Scalar lambda) {
  require(lambda.sign() > 0, "poisson lambda must be positive");
  return Distribution(PoissonParams{std::move(lambda)});
}

Distribution Distribution::poisson_binomial(std::vector<Scalar> p) {
  require(!p.empty(), "poisson_binomial needs at least one probability");
  for (std::size_t i = 0; i < p.size(); ++i) {
    require(in_unit_interval(p[i]), "poisson_binomial probabilities must lie in [0,1]");
    require(i == 0 || p[i] <= p[i - 1], "poisson_binomial probabilities must be nonincreasing");
  }
  return Distribution(PoissonBinomialParams{std::move(p)});
}

bool Distribution::identical(const Distribution& o) const {
  if (family() != o.family()) return false;
  return std::visit(
      Overloaded{
          [&](const BinomialParams& a) {
            const auto& b = o.as<BinomialParams>();
            return a.n == b.n && a.p.identical(b.p);
          },
          [&](const NegBinomialParams& a) {
            const auto& b = o.as<NegBinomialParams>();
            return a.r.identical(b.r) && a.p.identical(b.p);
          },
          [&](const HypergeometricParams& a) {
            const auto& b = o.as<HypergeometricParams>();
            return a.black == b.black && a.white == b.white && a.n == b.n;
          },
          [&](const PoissonParams& a) { return a.lambda.identical(o.as<PoissonParams>().lambda); },
          [&](const PoissonBinomialParams& a) {
            const auto& b = o.as<PoissonBinomialParams>();
            return std::equal(a.p.begin(), a.p.end(), b.p.begin(), b.p.end(),
                              [](const Scalar& x, const Scalar& y) { return x.identical(y); });
          },
      },
      params_);
}

bool Distribution::exact() const {
  return std::visit(
      Overloaded{
          [](const BinomialParams& a) { return a.p.is_exact(); },
          [](const NegBinomialParams& a) {
            return a.p.is_exact() && (exact_positive_integer(a.r) || a.p == Scalar(1));
          },
          [](const HypergeometricParams&) { return true; },
          [](const PoissonParams&) { return false; },
          [](const PoissonBinomialParams& a) {
            return std::all_of(a.p.begin(), a.p.end(), [](const Scalar& s) { return s.is_exact(); });
          },
      },
      params_);
}

std::string Distribution::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const BinomialParams& a) { os << "Binomial(" << a.n << ", " << a.p << ")"; },
                 [&](const NegBinomialParams& a) { os << "NegBinomial(" << a.r << ", " << a.p << ")"; },
                 [&](const HypergeometricParams& a) {
                   os << "Hypergeometric(" << a.black << ", " << a.white << ", " << a.n << ")";
                 },
                 [&](const PoissonParams& a) { os << "Poisson(" << a.lambda << ")"; },
                 [&](const PoissonBinomialParams& a) {
                   os << "PoissonBinomial(";
                   for (std::size_t i = 0; i < a.p.size(); ++i) os << (i ? ", " : "") << a.p[i];
                   os << ")";
                 },
             },
             params_);
  return os.str();
}

SupportBounds support(const Distribution& d) {
  return std::visit(
      Overloaded{
          [](const BinomialParams& a) -> SupportBounds {
            if (a.p.is_zero()) return {0, 0L};
            if (a.p == Scalar(1)) return {a.n, a.n};
            return {0, a.n};
          },
          [](const NegBinomialParams& a) -> SupportBounds {
            if (a.p == Scalar(1)) return {0, 0L};
            return {0, std::nullopt};
          },
          [](const HypergeometricParams& a) -> SupportBounds {
            return {std::max(0L, a.n - a.white), std::min(a.black, a.n)};
          },
          [](const PoissonParams&) -> SupportBounds { return {0, std::nullopt}; },
          [](const PoissonBinomialParams& a) -> SupportBounds {
            const auto ones = std::count_if(a.p.begin(), a.p.end(), [](const Scalar& s) { return s == Scalar(1); });
            const auto positive = std::count_if(a.p.begin(), a.p.end(), [](const Scalar& s) { return s.sign() > 0; });
            return {static_cast<long>(ones), static_cast<long>(positive)};
          },
      },
      d.params());
}

SupportBounds joint_support(const Distribution& p, const Distribution& q) {
  const auto a = support(p);
  const auto b = support(q);
  SupportBounds out{std::min(a.k_min, b.k_min), std::nullopt};
  if (a.finite() && b.finite()) out.k_max = std::max(*a.k_max, *b.k_max);
  return out;
}

std::vector<Scalar> poisson_binomial_pmf(std::span<const Scalar> p) {
  std::vector<Scalar> out{Scalar(1)};
  out.reserve(p.size() + 1);
  for (const Scalar& pi : p) {
    const Scalar qi = one_minus(pi);
    out.push_back(Scalar(0));
    for (std::size_t k = out.size() - 1; k > 0; --k) out[k] = out[k] * qi + out[k - 1] * pi;
    out[0] = out[0] * qi;
  }
  return out;
}

Scalar pmf(const Distribution& d, long k) {
  if (k < 0) return Scalar(0);
  return std::visit(
      Overloaded{
          [&](const BinomialParams& a) -> Scalar {
            if (k > a.n) return Scalar(0);
            if (a.p.is_exact()) {
              const Rational& p = a.p.rational();
              return Scalar(Rational(binomial_coefficient(a.n, k)) * pow(p, k) * pow(Rational(1 - p), a.n - k));
            }
            return Scalar::floating(bm::pdf(bm::binomial_distribution<>(a.n, a.p.to_double()), k));
          },
          [&](const NegBinomialParams& a) -> Scalar {
            if (a.p == Scalar(1)) return Scalar(k == 0 ? 1 : 0);
            if (a.p.is_exact() && exact_positive_integer(a.r)) {
              const long r = a.r.rational().get_num().get_si();
              const Rational& p = a.p.rational();
              return Scalar(Rational(binomial_coefficient(r + k - 1, k)) * pow(p, r) * pow(Rational(1 - p), k));
            }
            return Scalar::floating(
                bm::pdf(bm::negative_binomial_distribution<>(a.r.to_double(), a.p.to_double()), k));
          },
          [&](const HypergeometricParams& a) -> Scalar {
            const auto sb = support(d);
            if (!sb.contains(k)) return Scalar(0);
            return Scalar(Rational(binomial_coefficient(a.black, k) * binomial_coefficient(a.white, a.n - k),
                                   binomial_coefficient(a.black + a.white, a.n)));
          },
          [&](const PoissonParams& a) -> Scalar {
            return Scalar::floating(bm::pdf(bm::poisson_distribution<>(a.lambda.to_double()), k));
          },
          [&](const PoissonBinomialParams& a) -> Scalar {
            if (k > static_cast<long>(a.p.size())) return Scalar(0);
            return poisson_binomial_pmf(a.p)[static_cast<std::size_t>(k)];
          },
      },
      d.params());
}

Scalar cdf(const Distribution& d, long k) {
  MassTable t(d);
  return t.cdf(k);
}

Scalar survival(const Distribution& d, long k) {
  MassTable t(d);
  return t.survival(k);
}

Scalar mean(const Distribution& d) {
  return std::visit(
      Overloaded{
          [](const BinomialParams& a) { return Scalar(a.n) * a.p; },
          [](const NegBinomialParams& a) { return a.r * one_minus(a.p) / a.p; },
          [](const HypergeometricParams& a) {
            return Scalar::exact(a.n * a.black, a.black + a.white);
          },
          [](const PoissonParams& a) { return a.lambda; },
          [](const PoissonBinomialParams& a) {
            Scalar s(0);
            for (const auto& x : a.p) s += x;
            return s;
          },
      },
      d.params());
}

// ---------------------------------------------------------------------------
// MassTable

MassTable::MassTable(Distribution d) : dist_(std::move(d)), support_(support(dist_)) {
  if (const auto* pb = dist_.try_as<PoissonBinomialParams>()) {
    pmf_ = poisson_binomial_pmf(pb->p);
    Scalar acc(0);
    cdf_.reserve(pmf_.size());
    for (const auto& m : pmf_) cdf_.push_back(acc += m);
  }
}

void MassTable::extend_to(long k) {
  if (k < 0 || k <= size_hint()) return;
  if (support_.finite() && static_cast<long>(pmf_.size()) > *support_.k_max) return;
  const long stop = support_.finite() ? std::min(k, *support_.k_max) : k;
  pmf_.reserve(static_cast<std::size_t>(stop + 1));
  cdf_.reserve(static_cast<std::size_t>(stop + 1));

  const auto* nb = dist_.try_as<NegBinomialParams>();
  const bool nb_recurrence = nb != nullptr && exact() && !(nb->p == Scalar(1));
  for (long j = static_cast<long>(pmf_.size()); j <= stop; ++j) {
    Scalar m;
    if (nb_recurrence && j > 0) {
      // pmf(j) = pmf(j-1) * (r + j - 1) / j * (1 - p)
      m = pmf_.back() * (nb->r + Scalar(j - 1)) / Scalar(j) * one_minus(nb->p);
    } else {
      m = stochord::pmf(dist_, j);
    }
    pmf_.push_back(m);
    if (exact()) {
      cdf_.push_back(cdf_.empty() ? m : cdf_.back() + m);
    } else {
      cdf_.push_back(Scalar(0));  // filled lazily by cdf()
    }
  }
}

Scalar MassTable::pmf(long k) {
  if (!support_.contains(k)) return Scalar(0);
  extend_to(k);
  return pmf_[static_cast<std::size_t>(k)];
}

Scalar MassTable::cdf(long k) {
  if (k < support_.k_min) return Scalar(0);
  if (support_.finite() && k >= *support_.k_max) return Scalar(1);
  if (exact()) {
    extend_to(k);
    return cdf_[static_cast<std::size_t>(k)];
  }
  return std::visit(
      Overloaded{
          [&](const BinomialParams& a) {
            return Scalar::floating(boost_cdf(bm::binomial_distribution<>(a.n, a.p.to_double()), k));
          },
          [&](const NegBinomialParams& a) {
            return Scalar::floating(
                boost_cdf(bm::negative_binomial_distribution<>(a.r.to_double(), a.p.to_double()), k));
          },
          [&](const PoissonParams& a) {
            return Scalar::floating(boost_cdf(bm::poisson_distribution<>(a.lambda.to_double()), k));
          },
          [&](const auto&) {
            // Floating Poisson-binomial: direct summation of the finite pmf.
            double s = 0.0;
            for (long j = 0; j <= k && j < static_cast<long>(pmf_.size()); ++j) s += pmf_[j].to_double();
            return Scalar::floating(std::min(1.0, s));
          },
      },
      dist_.params());
}

Scalar MassTable::survival(long k) {
  if (k <= support_.k_min) return Scalar(1);
  if (support_.finite() && k > *support_.k_max) return Scalar(0);
  if (exact()) return Scalar(1) - cdf(k - 1);
  return std::visit(
      Overloaded{
          [&](const BinomialParams& a) {
            return Scalar::floating(boost_survival(bm::binomial_distribution<>(a.n, a.p.to_double()), k));
          },
          [&](const NegBinomialParams& a) {
            return Scalar::floating(
                boost_survival(bm::negative_binomial_distribution<>(a.r.to_double(), a.p.to_double()), k));
          },
          [&](const PoissonParams& a) {
            return Scalar::floating(boost_survival(bm::poisson_distribution<>(a.lambda.to_double()), k));
          },
          [&](const auto&) {
            double s = 0.0;
            for (long j = static_cast<long>(pmf_.size()) - 1; j >= k; --j) s += pmf_[j].to_double();
            return Scalar::floating(std::min(1.0, s));
          },
      },
      dist_.params());
}

Scalar cdf_difference(MassTable& p, MassTable& q, long k) {
  if (p.exact() && q.exact()) return p.cdf(k) - q.cdf(k);
  const double fp = p.cdf(k).to_double();
  const double fq = q.cdf(k).to_double();
  if (fp <= 0.5 && fq <= 0.5) return Scalar::floating(fp - fq);
  // F_P(k) - F_Q(k) = S_Q(k+1) - S_P(k+1)
  return Scalar::floating(q.survival(k + 1).to_double() - p.survival(k + 1).to_double());
}

int cdf_difference_sign(MassTable& p, MassTable& q, long k) { return cdf_difference(p, q, k).sign(); }

}  // namespace stochord
