#include <cmath>
#include <random>

#include "common.hpp"
#include "doctest.h"
#include "stochord/error.hpp"
#include "stochord/ordering.hpp"

using namespace stochord;
using namespace testing;

namespace {

Scalar upper_tail(const Distribution& d, long k) { return Scalar(1) - cdf(d, k); }

bool dominated(const Distribution& p, const Distribution& qd) {
  const Relation r = dominance_exact(p, qd).relation;
  return r == Relation::LeSt || r == Relation::Equal;
}

// Nonincreasing vector with entries k/8.
std::vector<Scalar> random_delta(std::mt19937& gen, std::size_t n) {
  std::uniform_int_distribution<long> pick(0, 8);
  std::vector<long> raw(n);
  for (auto& v : raw) v = pick(gen);
  std::sort(raw.begin(), raw.end(), std::greater<>());
  std::vector<Scalar> out;
  for (long v : raw) out.push_back(q(v, 8));
  return out;
}

}  // namespace

TEST_SUITE("ordering") {
  TEST_CASE("binomial closed form") {
    const auto r = decide_closed_form(bin(2, q(1, 2)), bin(3, q(2, 5)));
    REQUIRE(r.has_value());
    CHECK(r->which == ClosedFormCase::BinomialBinomial);
    CHECK(r->le_st);
    CHECK(dominated(bin(2, q(1, 2)), bin(3, q(2, 5))));
    const auto fail = decide_closed_form(bin(4, q(1, 2)), bin(3, q(9, 10)));
    REQUIRE(fail.has_value());
    CHECK_FALSE(fail->le_st);
    CHECK_FALSE(fail->failed().empty());
  }

  TEST_CASE("negative binomials with a common p are ordered by r") {
    for (long r1 = 1; r1 <= 4; ++r1) {
      for (long r2 = 1; r2 <= 4; ++r2) {
        const auto r = decide_closed_form(nb(r1, q(1, 3)), nb(r2, q(1, 3)));
        REQUIRE(r.has_value());
        CHECK(r->le_st == (r1 <= r2));
      }
    }
  }

  TEST_CASE("binomial below poisson") {
    const auto r = decide_closed_form(bin(3, q(1, 5)), poi(1));
    REQUIRE(r.has_value());
    CHECK(r->which == ClosedFormCase::BinomialPoisson);
    CHECK(r->le_st == (std::pow(0.8, 3) >= std::exp(-1.0)));
    CHECK(decide(bin(3, q(1, 5)), poi(1)).relation == Relation::LeSt);
  }

  TEST_CASE("counterexample verdicts") {
    const OrderingVerdict v = decide(hyp(400, 509, 500), hyp(310, 710, 700));
    CHECK(v.relation == Relation::Incomparable);
    REQUIRE(v.witnesses.has_value());
    CHECK(v.witnesses->k_minus <= 44);
    CHECK(v.witnesses->k_plus >= 45);

    const OrderingVerdict w = decide(hyp(100, 100, 18), hyp(21, 23, 22));
    CHECK(w.relation == Relation::LeSt);
    CHECK(certificate_kind(w.certificate) == "oracle_exact");

    CHECK(decide(bin(18, q(1, 2)), hyp(21, 23, 22)).relation == Relation::LeSt);
    CHECK(decide(hyp(21, 23, 22), bin(18, parse_rational("0.5106"))).relation == Relation::Incomparable);
  }

  TEST_CASE("identical specs") {
    const OrderingVerdict v = decide(poi(q(3, 2)), poi(q(3, 2)));
    CHECK(v.relation == Relation::Equal);
    CHECK(certificate_kind(v.certificate) == "identical");
  }

  TEST_CASE("reversed closed form gives ge_st") {
    const OrderingVerdict v = decide(bin(3, q(2, 5)), bin(2, q(1, 2)));
    CHECK(v.relation == Relation::GeSt);
    CHECK(certificate_kind(v.certificate) == "closed_form");
  }

  TEST_CASE("oracle-only policy agrees") {
    DecidePolicy policy;
    policy.oracle_only = true;
    CHECK(decide(bin(2, q(1, 2)), bin(3, q(2, 5)), policy).relation == Relation::LeSt);
    CHECK(decide(nb(1, q(1, 2)), nb(1, q(1, 4)), policy).relation == Relation::LeSt);
  }

  TEST_CASE("bernoulli convolution sufficient conditions") {
    const std::vector<Scalar> p{q(1, 2), q(1, 3)};
    const BcSufficiency self = bc_sufficient(p, p);
    CHECK(self.success_products);
    CHECK(self.failure_products);

    // Padded constant vectors: failure products <=> n1 <= n2 and (1-p1)^n1 >= (1-q1)^n2.
    for (long n1 = 1; n1 <= 4; ++n1) {
      for (long n2 = 1; n2 <= 4; ++n2) {
        for (long a = 1; a <= 4; ++a) {
          for (long b = 1; b <= 4; ++b) {
            const std::vector<Scalar> pv(static_cast<std::size_t>(n1), q(a, 5));
            const std::vector<Scalar> qv(static_cast<std::size_t>(n2), q(b, 5));
            const bool expected = n1 <= n2 && compare_powers(q(5 - a, 5), n1, q(5 - b, 5), n2) >= 0;
            CHECK(bc_sufficient(pv, qv).failure_products == expected);
          }
        }
      }
    }
  }

  TEST_CASE("sufficient conditions imply the order on random vectors") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = random_delta(gen, 1 + trial % 5);
      const auto qv = random_delta(gen, 1 + (trial / 5) % 5);
      const BcSufficiency s = bc_sufficient(p, qv);
      if (s.any()) {
        CHECK(dominated(Distribution::poisson_binomial(p), Distribution::poisson_binomial(qv)));
      }
    }
  }

  TEST_CASE("single-mass criterion against a binomial") {
    const std::vector<Scalar> same(3, q(2, 5));
    CHECK(ma_criterion(same, 3, q(2, 5), MaDirection::ConvolutionBelowBinomial));
    CHECK(ma_criterion(same, 3, q(2, 5), MaDirection::BinomialBelowConvolution));
    const std::vector<Scalar> skew{q(9, 10), q(1, 10)};
    CHECK(ma_criterion(skew, 2, q(7, 10), MaDirection::ConvolutionBelowBinomial));
    CHECK(dominated(Distribution::poisson_binomial(skew), bin(2, q(7, 10))));
    CHECK_THROWS_AS(ma_criterion(skew, 3, q(7, 10), MaDirection::ConvolutionBelowBinomial), Error);
  }

  TEST_CASE("single-mass criterion matches the oracle on random vectors") {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
      const auto v = random_delta(gen, n);
      for (long i = 1; i <= 9; ++i) {
        const Distribution conv = Distribution::poisson_binomial(v);
        const Distribution b = bin(static_cast<long>(n), q(i, 10));
        CHECK(ma_criterion(v, static_cast<long>(n), q(i, 10), MaDirection::ConvolutionBelowBinomial) ==
              dominated(conv, b));
        CHECK(ma_criterion(v, static_cast<long>(n), q(i, 10), MaDirection::BinomialBelowConvolution) ==
              dominated(b, conv));
      }
    }
  }

  TEST_CASE("decide routes poisson binomial pairs") {
    const OrderingVerdict v =
        decide(Distribution::poisson_binomial({q(1, 2), q(1, 3)}), Distribution::poisson_binomial({q(2, 3), q(1, 2)}));
    CHECK(v.relation == Relation::LeSt);
    CHECK(certificate_kind(v.certificate) == "bernoulli_convolution");
  }

  TEST_CASE("incomparable verdicts carry verified witnesses") {
    const Distribution p = bin(5, q(1, 2));
    const Distribution qd = bin(6, q(3, 10));
    const OrderingVerdict v = decide(p, qd);
    REQUIRE(v.relation == Relation::Incomparable);
    REQUIRE(v.witnesses.has_value());
    CHECK(upper_tail(p, v.witnesses->k_minus) < upper_tail(qd, v.witnesses->k_minus));
    CHECK(upper_tail(p, v.witnesses->k_plus) > upper_tail(qd, v.witnesses->k_plus));
  }
}
