#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "stochord/error.hpp"
#include "stochord/likelihood.hpp"

using namespace stochord;
using namespace testing;

namespace {
double lambda_at(const LikelihoodProfile& prof, long k) { return prof.at(k)->to_double(); }
}  // namespace

TEST_SUITE("likelihood") {
  TEST_CASE("hypergeometric against b(18, 0.5106)") {
    const LikelihoodProfile prof = likelihood_profile(hyp(21, 23, 22), bin(18, parse_rational("0.5106")));
    CHECK(lambda_at(prof, 0) == doctest::Approx(4.21415303987428e-06).epsilon(1e-12));
    CHECK(lambda_at(prof, 13) == doctest::Approx(2.04903857201207).epsilon(1e-12));
    CHECK(lambda_at(prof, 17) == doctest::Approx(0.9969190761198085).epsilon(1e-12));
    CHECK(lambda_at(prof, 18) == doctest::Approx(1.0058181207929457).epsilon(1e-12));
    CHECK(prof.shape == Shape::NotHalfMonotone);
    CHECK(prof.at(19)->infinite());
    CHECK_FALSE(prof.at(22).has_value());
  }

  TEST_CASE("hypergeometric against b(18, 1/2)") {
    const LikelihoodProfile prof = likelihood_profile(hyp(21, 23, 22), bin(18, q(1, 2)));
    CHECK(lambda_at(prof, 17) == doctest::Approx(1.3939191072717516).epsilon(1e-12));
    CHECK(lambda_at(prof, 18) == doctest::Approx(1.46728327081237).epsilon(1e-12));
    for (long k = 0; k < 13; ++k) CHECK(prof.at(k + 1)->compare(*prof.at(k)) > 0);
  }

  TEST_CASE("identical laws give the constant profile") {
    const LikelihoodProfile prof = likelihood_profile(bin(5, q(1, 3)), bin(5, q(1, 3)));
    CHECK(prof.shape == Shape::Increasing);
    for (const auto& [k, v] : prof.values) CHECK(v.compare(Scalar(1)) == 0);
  }

  TEST_CASE("three monotone phases of the hypergeometric counterexample") {
    const LikelihoodProfile prof = likelihood_profile(hyp(400, 509, 500), hyp(310, 710, 700));
    CHECK(prof.shape == Shape::NotHalfMonotone);
    for (long k = 0; k < 400; ++k) {
      const int s = prof.at(k + 1)->compare(*prof.at(k));
      if (k < 2) {
        CHECK(s > 0);
      } else if (k >= 150) {
        CHECK(s >= 0);
      } else {
        CHECK(s < 0);
      }
    }
    CHECK(prof.at(2)->compare(Scalar(1)) > 0);
    CHECK(prof.at(400)->compare(Scalar(1)) > 0);
  }

  TEST_CASE("consecutive ratio closed forms") {
    CHECK(consecutive_ratio(bin(2, q(1, 2)), bin(3, q(1, 2)), 0) == q(2, 3));
    CHECK(consecutive_ratio(nb(1, q(1, 2)), nb(2, q(1, 2)), 0) == q(1, 2));
    const std::vector<std::pair<Distribution, Distribution>> pairs = {
        {bin(4, q(1, 3)), bin(6, q(1, 5))},     {nb(2, q(1, 3)), nb(q(7, 2), q(1, 2))},
        {hyp(5, 6, 4), hyp(7, 6, 5)},           {hyp(6, 5, 4), bin(5, q(2, 5))},
        {bin(5, q(2, 5)), poi(q(3, 2))},        {poi(q(3, 2)), nb(3, q(2, 3))},
        {bin(5, q(2, 5)), hyp(6, 5, 4)},        {poi(2), poi(q(1, 2))},
    };
    for (const auto& [p, qd] : pairs) {
      for (long k = 0; k < 4; ++k) {
        const Scalar quotient = (pmf(p, k + 1) / pmf(qd, k + 1)) / (pmf(p, k) / pmf(qd, k));
        if (quotient.is_exact()) {
          CHECK(consecutive_ratio(p, qd, k) == quotient);
        } else {
          CHECK(consecutive_ratio(p, qd, k).to_double() == doctest::Approx(quotient.to_double()).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("tail conditions") {
    const TailConditions t = tail_conditions(bin(3, q(1, 2)), bin(4, q(1, 3)));
    CHECK(t.left_holds == (Rational(1, 8) >= Rational(16, 81)));
    const TailConditions n = tail_conditions(nb(2, q(1, 2)), nb(1, q(1, 3)));
    CHECK(n.left_holds == (Rational(1, 4) >= Rational(1, 3)));
    const TailConditions same = tail_conditions(hyp(5, 6, 4), hyp(5, 6, 4));
    CHECK(same.left_value.compare(Scalar(1)) == 0);
    CHECK(same.right_value.compare(Scalar(1)) == 0);
    CHECK(same.left_holds);
    CHECK(same.right_holds);
  }

  TEST_CASE("half-monotone class membership") {
    CHECK_FALSE(in_H(hyp(100, 100, 18), hyp(21, 23, 22)).member);
    CHECK(in_H(bin(5, q(1, 3)), bin(5, q(1, 3))).member);
    const MembershipResult m = in_H(hyp(21, 23, 22), bin(18, parse_rational("0.5106")));
    CHECK_FALSE(m.member);
    CHECK(m.certificate.shape == Shape::NotHalfMonotone);
    // The tail conditions hold for the pair taken with the binomial first.
    const MembershipResult rev = in_H(bin(18, parse_rational("0.5106")), hyp(21, 23, 22));
    CHECK_FALSE(rev.member);
    CHECK(rev.certificate.tails.left_holds);
    CHECK(rev.certificate.tails.right_holds);
    CHECK(in_H(bin(2, q(1, 2)), bin(3, q(2, 5))).member);
  }

  TEST_CASE("likelihood ratio order") {
    CHECK_FALSE(is_lr_ordered(bin(1, q(1, 2)), bin(2, q(3, 10))));
    CHECK_FALSE(binomial_lr_closed_form({1, q(1, 2)}, {2, q(3, 10)}));
    CHECK(is_lr_ordered(poi(1), poi(2)));
    CHECK_FALSE(is_lr_ordered(poi(2), poi(1)));
    CHECK(is_lr_ordered(hyp(5, 6, 4), hyp(5, 6, 4)));
  }

  TEST_CASE("two-point conditional check") {
    CHECK(lr_two_point_check(bin(2, q(1, 4)), bin(2, q(1, 2))));
    CHECK_FALSE(lr_two_point_check(bin(1, q(1, 2)), bin(2, q(3, 10))));
    CHECK(lr_two_point_check(hyp(4, 4, 3), hyp(4, 4, 3)));
    CHECK_THROWS_AS(lr_two_point_check(poi(1), poi(2)), Error);
  }

  TEST_CASE("profiles of infinite supports are capped") {
    const LikelihoodProfile prof = likelihood_profile(poi(1), nb(2, q(1, 2)));
    REQUIRE(prof.k_cap.has_value());
    CHECK(prof.tail_certified);
    CHECK(default_k_cap(poi(1), nb(2, q(1, 2))) >= 40);
  }
}
