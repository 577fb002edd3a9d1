#include "stochord/ordering.hpp"

#include <cmath>

#include "stochord/error.hpp"

namespace stochord {

namespace {

std::string render(const Scalar& s) {
  if (s.is_exact()) {
    const Rational& q = s.rational();
    if (mpz_sizeinbase(q.get_num_mpz_t(), 10) + mpz_sizeinbase(q.get_den_mpz_t(), 10) <= 40) {
      return s.to_string();
    }
  }
  return format_double(s.to_double());
}

Condition condition(std::string side, std::string expression, std::string lhs, std::string rhs,
                    bool holds) {
  return Condition{std::move(side), std::move(expression), std::move(lhs), std::move(rhs), holds};
}

bool in_open_unit(const Scalar& p) { return p > Scalar(0) && p < Scalar(1); }

ClosedFormResult finish(ClosedFormCase which, std::vector<Condition> conditions) {
  ClosedFormResult out{which, true, std::move(conditions)};
  for (const auto& c : out.conditions) out.le_st = out.le_st && c.holds;
  return out;
}

ClosedFormResult binomial_binomial(const BinomialParams& a, const BinomialParams& b) {
  const Scalar zero(0);
  const Scalar one(1);
  if (a.p == zero) {
    return finish(ClosedFormCase::BinomialBinomial,
                  {condition("degenerate", "p1 = 0", render(a.p), "0", true)});
  }
  if (b.p == one) {
    return finish(ClosedFormCase::BinomialBinomial,
                  {condition("degenerate", "p2 = 1 and n1 <= n2", std::to_string(a.n),
                             std::to_string(b.n), a.n <= b.n)});
  }
  if (a.p == one || b.p == zero) {
    const bool first = a.p == one;
    return finish(ClosedFormCase::BinomialBinomial,
                  {condition("degenerate", first ? "p1 = 1 with p2 < 1" : "p2 = 0 with p1 > 0",
                             render(first ? a.p : b.p), first ? "1" : "0", false)});
  }
  const Scalar qa = one - a.p;
  const Scalar qb = one - b.p;
  const bool left = compare_powers(qa, Scalar(a.n), qb, Scalar(b.n)) >= 0;
  return finish(ClosedFormCase::BinomialBinomial,
                {condition("left", "(1-p1)^n1 >= (1-p2)^n2", render(pow(qa, a.n)), render(pow(qb, b.n)),
                           left),
                 condition("right", "n1 <= n2", std::to_string(a.n), std::to_string(b.n), a.n <= b.n)});
}

ClosedFormResult negbinomial_negbinomial(const NegBinomialParams& a, const NegBinomialParams& b) {
  const bool left = compare_powers(a.p, a.r, b.p, b.r) >= 0;
  const double la = std::pow(a.p.to_double(), a.r.to_double());
  const double lb = std::pow(b.p.to_double(), b.r.to_double());
  return finish(ClosedFormCase::NegBinomialNegBinomial,
                {condition("left", "p1^r1 >= p2^r2", format_double(la), format_double(lb), left),
                 condition("right", "p1 >= p2", render(a.p), render(b.p), a.p >= b.p)});
}

bool hypergeometric_pair_applicable(const HypergeometricParams& a, const HypergeometricParams& b) {
  if (b.black + b.white >= a.black + a.white) return true;
  const long left[] = {a.n, a.black, b.n - b.white - 1};
  const long right[] = {b.n, b.black, a.n - a.white - 1};
  for (long x : left) {
    for (long y : right) {
      if (x == y) return true;
    }
  }
  return false;
}

template <class MassP, class MassQ>
ClosedFormResult hypergeometric_hypergeometric(const HypergeometricParams& a, const HypergeometricParams& b,
                                               MassP&& pmf_p, MassQ&& pmf_q) {
  const long k_lower = std::min(std::max(a.n - a.white, 0L), std::max(b.n - b.white, 0L));
  const long k_upper = std::max(std::min(a.n, a.black), std::min(b.n, b.black));
  const Scalar pl = pmf_p(k_lower);
  const Scalar ql = pmf_q(k_lower);
  const Scalar pu = pmf_p(k_upper);
  const Scalar qu = pmf_q(k_upper);
  return finish(ClosedFormCase::HypergeometricHypergeometric,
                {condition("left", "P({" + std::to_string(k_lower) + "}) >= Q({" + std::to_string(k_lower) + "})",
                           render(pl), render(ql), pl >= ql),
                 condition("right", "P({" + std::to_string(k_upper) + "}) <= Q({" + std::to_string(k_upper) + "})",
                           render(pu), render(qu), pu <= qu)});
}

Scalar hypergeometric_ratio(long top, long total, long m) {
  return Scalar(Rational(binomial_coefficient(top, m), binomial_coefficient(total, m)));
}

ClosedFormResult hypergeometric_binomial(const HypergeometricParams& a, const BinomialParams& b) {
  const Scalar zero_mass = hypergeometric_ratio(a.white, a.black + a.white, a.n);
  const Scalar bzero = pow(Scalar(1) - b.p, b.n);
  const long top = std::min(a.n, a.black);
  return finish(ClosedFormCase::HypergeometricBinomial,
                {condition("left", "C(W,m)/C(B+W,m) >= (1-p)^n", render(zero_mass), render(bzero),
                           zero_mass >= bzero),
                 condition("right", "min(m,B) <= n", std::to_string(top), std::to_string(b.n), top <= b.n)});
}

ClosedFormResult binomial_hypergeometric(const BinomialParams& a, const HypergeometricParams& b) {
  const Scalar full = hypergeometric_ratio(b.black, b.black + b.white, b.n);
  const Scalar top = pow(a.p, a.n);
  return finish(ClosedFormCase::BinomialHypergeometric,
                {condition("right", "p^m <= C(B,m)/C(B+W,m)", render(top), render(full), top <= full)});
}

ClosedFormResult binomial_poisson(const BinomialParams& a, const PoissonParams& b) {
  const double p = a.p.to_double();
  const double lhs = p >= 1.0 ? -INFINITY : static_cast<double>(a.n) * std::log1p(-p);
  const double rhs = -b.lambda.to_double();
  return finish(ClosedFormCase::BinomialPoisson,
                {condition("left", "(1-p)^n >= exp(-lambda)", format_double(std::exp(lhs)),
                           format_double(std::exp(rhs)), lhs >= rhs)});
}

ClosedFormResult poisson_negbinomial(const PoissonParams& a, const NegBinomialParams& b) {
  const double lhs = -a.lambda.to_double();
  const double rhs = b.r.to_double() * std::log(b.p.to_double());
  return finish(ClosedFormCase::PoissonNegBinomial,
                {condition("left", "exp(-lambda) >= p^r", format_double(std::exp(lhs)),
                           format_double(std::exp(rhs)), lhs >= rhs)});
}

OrderingVerdict from_oracle(const Distribution& p, const Distribution& q, const DecidePolicy& policy) {
  const DominanceReport r = dominance(p, q, policy.oracle);
  OrderingVerdict v;
  v.relation = r.relation;
  v.witnesses = r.witnesses;
  v.crossings = r.crossings;
  v.diagnostic = r.diagnostic;
  if (const auto* t = std::get_if<TruncatedMode>(&r.mode)) {
    v.certificate = OracleTruncatedCertificate{t->k_cap, t->tail_bound, t->tail_certified};
  } else {
    v.certificate = OracleExactCertificate{};
  }
  return v;
}

Relation combine(bool le, bool ge) {
  if (le && ge) return Relation::Equal;
  return le ? Relation::LeSt : Relation::GeSt;
}

std::optional<OrderingVerdict> bernoulli_stage(const Distribution& p, const Distribution& q) {
  const auto* pa = p.try_as<PoissonBinomialParams>();
  const auto* qa = q.try_as<PoissonBinomialParams>();
  if (pa && qa) {
    const BcSufficiency fwd = bc_sufficient(pa->p, qa->p);
    const BcSufficiency bwd = bc_sufficient(qa->p, pa->p);
    if (!fwd.any() && !bwd.any()) return std::nullopt;
    const auto& used = fwd.any() ? fwd : bwd;
    const BcCriterion c = used.success_products ? BcCriterion::SuccessProducts : BcCriterion::FailureProducts;
    OrderingVerdict v;
    v.relation = combine(fwd.any(), bwd.any());
    v.certificate = BernoulliConvolutionCertificate{c, !fwd.any()};
    return v;
  }
  const BinomialParams* bin = p.try_as<BinomialParams>();
  const PoissonBinomialParams* conv = qa;
  bool binomial_first = true;
  if (!(bin && conv)) {
    bin = q.try_as<BinomialParams>();
    conv = pa;
    binomial_first = false;
  }
  if (!(bin && conv) || static_cast<long>(conv->p.size()) != bin->n || !in_open_unit(bin->p)) {
    return std::nullopt;
  }
  const bool bin_below = ma_criterion(conv->p, bin->n, bin->p, MaDirection::BinomialBelowConvolution);
  const bool conv_below = ma_criterion(conv->p, bin->n, bin->p, MaDirection::ConvolutionBelowBinomial);
  if (!bin_below && !conv_below) return std::nullopt;
  const bool le = binomial_first ? bin_below : conv_below;
  const bool ge = binomial_first ? conv_below : bin_below;
  OrderingVerdict v;
  v.relation = combine(le, ge);
  const BcCriterion c = bin_below ? BcCriterion::MaFullMass : BcCriterion::MaZeroMass;
  v.certificate = BernoulliConvolutionCertificate{c, !le};
  return v;
}

void check_delta(std::span<const Scalar> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < Scalar(0) || v[i] > Scalar(1)) {
      throw Error(ErrorCode::InvalidArgument, "success probabilities must lie in [0,1]");
    }
    if (i > 0 && v[i] > v[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "success probabilities must be nonincreasing");
    }
  }
}

}  // namespace

std::string_view to_string(ClosedFormCase c) {
  switch (c) {
    case ClosedFormCase::BinomialBinomial: return "binomial_binomial";
    case ClosedFormCase::NegBinomialNegBinomial: return "negbinomial_negbinomial";
    case ClosedFormCase::HypergeometricHypergeometric: return "hypergeometric_hypergeometric";
    case ClosedFormCase::HypergeometricBinomial: return "hypergeometric_binomial";
    case ClosedFormCase::BinomialHypergeometric: return "binomial_hypergeometric";
    case ClosedFormCase::BinomialPoisson: return "binomial_poisson";
    case ClosedFormCase::PoissonNegBinomial: return "poisson_negbinomial";
  }
  return "unknown";
}

std::string_view to_string(BcCriterion c) {
  switch (c) {
    case BcCriterion::SuccessProducts: return "success_products";
    case BcCriterion::FailureProducts: return "failure_products";
    case BcCriterion::MaZeroMass: return "zero_mass";
    case BcCriterion::MaFullMass: return "full_mass";
  }
  return "unknown";
}

std::string_view certificate_kind(const Certificate& c) {
  struct Visitor {
    std::string_view operator()(const ClosedFormCertificate&) const { return "closed_form"; }
    std::string_view operator()(const HmlrVerdictCertificate&) const { return "hmlr"; }
    std::string_view operator()(const OracleExactCertificate&) const { return "oracle_exact"; }
    std::string_view operator()(const OracleTruncatedCertificate&) const { return "oracle_truncated"; }
    std::string_view operator()(const BernoulliConvolutionCertificate&) const {
      return "bernoulli_convolution";
    }
    std::string_view operator()(const IdenticalCertificate&) const { return "identical"; }
  };
  return std::visit(Visitor{}, c);
}

std::vector<std::string> ClosedFormResult::failed() const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    if (!c.holds) out.push_back(c.expression);
  }
  return out;
}

std::optional<ClosedFormResult> decide_closed_form(const Distribution& p, const Distribution& q) {
  const Family fp = p.family();
  const Family fq = q.family();
  if (fp == Family::Binomial && fq == Family::Binomial) {
    return binomial_binomial(p.as<BinomialParams>(), q.as<BinomialParams>());
  }
  if (fp == Family::NegBinomial && fq == Family::NegBinomial) {
    return negbinomial_negbinomial(p.as<NegBinomialParams>(), q.as<NegBinomialParams>());
  }
  if (fp == Family::Hypergeometric && fq == Family::Hypergeometric) {
    if (!hypergeometric_pair_applicable(p.as<HypergeometricParams>(), q.as<HypergeometricParams>())) {
      return std::nullopt;
    }
    return hypergeometric_hypergeometric(p.as<HypergeometricParams>(), q.as<HypergeometricParams>(),
                                         [&](long k) { return pmf(p, k); }, [&](long k) { return pmf(q, k); });
  }
  if (fp == Family::Hypergeometric && fq == Family::Binomial) {
    const auto& a = p.as<HypergeometricParams>();
    const auto& b = q.as<BinomialParams>();
    if (a.black < 1 || a.white < 1 || !(b.p > Scalar(0))) return std::nullopt;
    return hypergeometric_binomial(a, b);
  }
  if (fp == Family::Binomial && fq == Family::Hypergeometric) {
    const auto& a = p.as<BinomialParams>();
    const auto& b = q.as<HypergeometricParams>();
    if (a.n != b.n) return std::nullopt;
    return binomial_hypergeometric(a, b);
  }
  if (fp == Family::Binomial && fq == Family::Poisson) {
    return binomial_poisson(p.as<BinomialParams>(), q.as<PoissonParams>());
  }
  if (fp == Family::Poisson && fq == Family::NegBinomial) {
    const auto& b = q.as<NegBinomialParams>();
    if (!in_open_unit(b.p)) return std::nullopt;
    return poisson_negbinomial(p.as<PoissonParams>(), b);
  }
  return std::nullopt;
}

std::optional<ClosedFormResult> decide_closed_form(MassTable& p, MassTable& q) {
  const Distribution& dp = p.distribution();
  const Distribution& dq = q.distribution();
  if (dp.family() == Family::Hypergeometric && dq.family() == Family::Hypergeometric) {
    const auto& a = dp.as<HypergeometricParams>();
    const auto& b = dq.as<HypergeometricParams>();
    if (!hypergeometric_pair_applicable(a, b)) return std::nullopt;
    return hypergeometric_hypergeometric(a, b, [&](long k) { return p.pmf(k); }, [&](long k) { return q.pmf(k); });
  }
  return decide_closed_form(dp, dq);
}

OrderingVerdict decide(const Distribution& p, const Distribution& q, const DecidePolicy& policy) {
  if (p.identical(q)) {
    OrderingVerdict v;
    v.relation = Relation::Equal;
    v.certificate = IdenticalCertificate{};
    return v;
  }
  if (policy.oracle_only) return from_oracle(p, q, policy);

  const auto fwd = decide_closed_form(p, q);
  const auto bwd = decide_closed_form(q, p);
  const bool le = fwd && fwd->le_st;
  const bool ge = bwd && bwd->le_st;
  if (le || ge) {
    OrderingVerdict v;
    v.relation = combine(le, ge);
    v.certificate = le ? ClosedFormCertificate{*fwd, false} : ClosedFormCertificate{*bwd, true};
    return v;
  }
  if (fwd && bwd) return from_oracle(p, q, policy);

  if (auto v = bernoulli_stage(p, q)) return *v;

  const auto membership = [&](const Distribution& a, const Distribution& b) -> std::optional<MembershipResult> {
    try {
      return in_H(a, b, policy.oracle.k_cap);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const auto mf = fwd ? std::nullopt : membership(p, q);
  const auto mb = bwd ? std::nullopt : membership(q, p);
  const bool hl = mf && mf->member;
  const bool hg = mb && mb->member;
  if (hl || hg) {
    OrderingVerdict v;
    v.relation = combine(hl, hg);
    v.certificate = hl ? HmlrVerdictCertificate{mf->certificate, false}
                       : HmlrVerdictCertificate{mb->certificate, true};
    return v;
  }
  return from_oracle(p, q, policy);
}

BcSufficiency bc_sufficient(std::span<const Scalar> p, std::span<const Scalar> q) {
  check_delta(p);
  check_delta(q);
  const std::size_t n = std::max(p.size(), q.size());
  auto at = [](std::span<const Scalar> v, std::size_t i) { return i < v.size() ? v[i] : Scalar(0); };
  BcSufficiency out{true, true};
  Scalar prod_p(1);
  Scalar prod_q(1);
  for (std::size_t i = 0; i < n; ++i) {
    prod_p *= at(p, i);
    prod_q *= at(q, i);
    if (prod_p > prod_q) {
      out.success_products = false;
      break;
    }
  }
  Scalar fail_p(1);
  Scalar fail_q(1);
  for (std::size_t i = n; i-- > 0;) {
    fail_p *= Scalar(1) - at(p, i);
    fail_q *= Scalar(1) - at(q, i);
    if (fail_p < fail_q) {
      out.failure_products = false;
      break;
    }
  }
  return out;
}

bool ma_criterion(std::span<const Scalar> q, long n, const Scalar& p, MaDirection direction) {
  if (static_cast<long>(q.size()) != n) {
    throw Error(ErrorCode::LengthMismatch, "vector length must equal the binomial size");
  }
  if (!in_open_unit(p)) throw Error(ErrorCode::InvalidArgument, "p must lie in (0,1)");
  check_delta(q);
  if (direction == MaDirection::ConvolutionBelowBinomial) {
    Scalar conv(1);
    for (const auto& x : q) conv *= Scalar(1) - x;
    return pow(Scalar(1) - p, n) <= conv;
  }
  Scalar conv(1);
  for (const auto& x : q) conv *= x;
  return pow(p, n) <= conv;
}

}  // namespace stochord
