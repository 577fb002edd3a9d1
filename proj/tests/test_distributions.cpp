#include "common.hpp"
#include "doctest.h"
#include "stochord/error.hpp"

using namespace stochord;
using namespace testing;

TEST_SUITE("distributions") {
  TEST_CASE("scalar arithmetic stays exact until a double appears") {
    const Scalar a = q(2, 4);
    CHECK(a.is_exact());
    CHECK(a.rational().get_num() == 1);
    CHECK(a.rational().get_den() == 2);
    CHECK((a + q(1, 3)).is_exact());
    CHECK((a + q(1, 3)) == q(5, 6));
    CHECK_FALSE((a * Scalar::floating(0.5)).is_exact());
    CHECK(Scalar::exact(Rational(3, -6)).to_string() == "-1/2");
  }

  TEST_CASE("decimal literals parse exactly") {
    CHECK(parse_rational("0.5106") == Rational(2553, 5000));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("7/21") == Rational(1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
  }

  TEST_CASE("compare_powers") {
    CHECK(compare_powers(q(1, 2), 2, q(3, 5), 3) > 0);  // 1/4 vs 27/125
    CHECK(compare_powers(q(1, 2), 2, q(1, 4), 1) == 0);
    CHECK(compare_powers(Scalar::floating(0.5), 2, q(1, 2), 3) > 0);
  }

  TEST_CASE("factories validate parameters") {
    CHECK_THROWS_AS(bin(0, q(1, 2)), Error);
    CHECK_THROWS_AS(bin(3, q(3, 2)), Error);
    CHECK_THROWS_AS(nb(0, q(1, 2)), Error);
    CHECK_THROWS_AS(nb(1, 0), Error);
    CHECK_THROWS_AS(hyp(1, 1, 3), Error);
    CHECK_THROWS_AS(poi(0), Error);
    CHECK_THROWS_AS(Distribution::poisson_binomial({q(1, 3), q(1, 2)}), Error);
  }

  TEST_CASE("point masses") {
    CHECK(pmf(bin(18, q(1, 2)), 18) == q(1, 262144));
    CHECK(pmf(hyp(21, 23, 22), 22) == 0);
    CHECK(pmf(nb(2, q(1, 2)), 1) == q(1, 4));
    CHECK(pmf(bin(3, q(1, 2)), -1) == 0);
  }

  TEST_CASE("cdf and survival") {
    CHECK(cdf(bin(2, q(1, 2)), 1) == q(3, 4));
    CHECK(survival(bin(2, q(1, 2)), 2) == q(1, 4));
    CHECK(survival(Distribution::poisson_binomial({1, q(1, 2)}), 0) == 1);
    CHECK(survival(hyp(3, 2, 4), 1) == 1);
    CHECK(cdf(hyp(400, 509, 500), 44) > cdf(hyp(310, 710, 700), 44));
  }

  TEST_CASE("support bounds") {
    const SupportBounds h = support(hyp(21, 23, 22));
    CHECK(h.k_min == 0);
    CHECK(h.k_max == 21);
    CHECK_FALSE(support(poi(1)).finite());
    const SupportBounds pb = support(Distribution::poisson_binomial({1, q(1, 2)}));
    CHECK(pb.k_min == 1);
    CHECK(pb.k_max == 2);
  }

  TEST_CASE("poisson binomial convolution") {
    const std::vector<Scalar> half{q(1, 2), q(1, 2)};
    const auto pmf2 = poisson_binomial_pmf(half);
    REQUIRE(pmf2.size() == 3);
    CHECK(pmf2[0] == q(1, 4));
    CHECK(pmf2[1] == q(1, 2));
    CHECK(pmf2[2] == q(1, 4));
    const std::vector<Scalar> one{q(2, 7)};
    const auto pmf1 = poisson_binomial_pmf(one);
    CHECK(pmf1[0] == q(5, 7));
    CHECK(pmf1[1] == q(2, 7));
    const std::vector<Scalar> same(6, q(3, 10));
    const auto pmf6 = poisson_binomial_pmf(same);
    for (long k = 0; k <= 6; ++k) CHECK(pmf6[static_cast<std::size_t>(k)] == pmf(bin(6, q(3, 10)), k));
  }

  TEST_CASE("negative binomial waiting-time identity") {
    for (long n = 1; n <= 6; ++n) {
      for (long k = 1; k <= 12; ++k) {
        const Scalar p = q(2, 7);
        CHECK(cdf(nb(n, p), k - 1) == cdf(bin(n + k - 1, Scalar(1) - p), k - 1));
      }
    }
  }

  TEST_CASE("masses sum to one") {
    for (const Distribution& d : {bin(7, q(2, 9)), hyp(5, 4, 6), Distribution::poisson_binomial({q(1, 2), q(1, 3), 0})}) {
      const SupportBounds s = support(d);
      Scalar total(0);
      for (long k = s.k_min; k <= *s.k_max; ++k) total += pmf(d, k);
      CHECK(total == 1);
    }
    MassTable t(poi(q(3, 2)));
    CHECK(std::abs(t.cdf(60).to_double() - 1.0) < 1e-15);
  }

  TEST_CASE("floating parameters use double arithmetic") {
    const Distribution d = bin(4, Scalar::floating(0.25));
    CHECK_FALSE(d.exact());
    CHECK(std::abs(pmf(d, 0).to_double() - 0.31640625) < 1e-15);
  }
}
