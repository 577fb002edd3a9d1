#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "stochord/couplings.hpp"
#include "stochord/error.hpp"
#include "stochord/rng.hpp"

using namespace stochord;
using namespace testing;

namespace {

bool all_dominated(const std::vector<CouplingSample>& s) {
  for (const auto& x : s) {
    if (x.x1 > x.x2) return false;
  }
  return true;
}

bool all_equal(const std::vector<CouplingSample>& s) {
  for (const auto& x : s) {
    if (x.x1 != x.x2) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("couplings") {
  TEST_CASE("rng streams are reproducible") {
    Rng a = Rng::substream(5, 3);
    Rng b = Rng::substream(5, 3);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
      const double u = c.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      CHECK(c.below(7) < 7);
    }
  }

  TEST_CASE("joint box law with empty occupied sets is uniform") {
    for (long n2 = 1; n2 <= 4; ++n2) {
      for (long n1 = 1; n1 <= n2; ++n1) {
        const OccupancyJoint j = q_joint(0, 0, n1, n2);
        for (long r1 = 1; r1 <= n1; ++r1) {
          for (long r2 = 1; r2 <= n2; ++r2) CHECK(j.at(r1, r2) == Rational(1, n1 * n2));
        }
      }
    }
  }

  TEST_CASE("joint box law for two and three boxes") {
    const OccupancyJoint j = q_joint(1, 1, 2, 3);
    CHECK(j.at(1, 1) == Rational(1, 3));
    CHECK(j.at(1, 2) == Rational(1, 12));
    CHECK(j.at(1, 3) == Rational(1, 12));
    CHECK(j.at(2, 1) == 0);
    CHECK(j.at(2, 2) == Rational(1, 4));
    CHECK(j.block_mass(true, true) + j.block_mass(true, false) == Rational(1, 2));
    CHECK_NOTHROW(q_joint(1, 3, 2, 3));
    CHECK_THROWS_AS(q_joint(3, 3, 3, 3), Error);
    CHECK_THROWS_AS(q_joint(3, 1, 2, 3), Error);
    CHECK_THROWS_AS(q_joint(1, 1, 3, 2), Error);
  }

  TEST_CASE("explicit coupling") {
    CHECK(all_equal(binomial_explicit_coupling(4, q(1, 3), 4, q(1, 3), 1, 2000)));
    const Scalar boundary = Scalar::floating(1.0 - std::sqrt(0.5));
    const auto s = binomial_explicit_coupling(2, q(1, 2), 4, boundary, kDefaultSeed, 100000);
    const CouplingSummary sum = summarize(s, bin(2, q(1, 2)), bin(4, boundary));
    CHECK(sum.violations == 0);
    CHECK(sum.x1_fit.p_value > 1e-3);
    CHECK(sum.x2_fit.p_value > 1e-3);
    CHECK_THROWS_AS(binomial_explicit_coupling(3, q(1, 2), 2, q(1, 2), 1, 10), Error);
    CHECK_THROWS_AS(binomial_explicit_coupling(2, q(1, 2), 3, q(1, 10), 1, 10), Error);
  }

  TEST_CASE("explicit coupling traces keep occupancies ordered") {
    const auto s = binomial_explicit_coupling(3, q(3, 10), 5, q(1, 4), 9, 500, true);
    for (const auto& x : s) {
      REQUIRE(x.trace.has_value());
      for (const auto& occ : x.trace->occupancy) CHECK(occ[0] <= occ[1]);
    }
  }

  TEST_CASE("occupancy chain coupling") {
    CHECK(all_equal(binomial_occupancy_coupling(3, q(2, 5), 3, q(2, 5), 2, 2000)));
    const auto s = binomial_occupancy_coupling(3, q(3, 10), 5, q(1, 4), 3, 50000);
    CHECK(summarize(s, bin(3, q(3, 10)), bin(5, q(1, 4))).violations == 0);
  }

  TEST_CASE("occupancy pushforward") {
    const auto zero = occupancy_pushforward(4, 0);
    CHECK(zero[0] == 1);
    const auto two = occupancy_pushforward(2, 2);
    CHECK(two[1] == Rational(1, 2));
    CHECK(two[2] == Rational(1, 2));
    const auto three = occupancy_pushforward(3, 2);
    CHECK(three[1] == Rational(1, 3));
    CHECK(three[2] == Rational(2, 3));
    CHECK(occupancy_transition(4, 1, 1) == Rational(1, 4));
    CHECK(occupancy_transition(4, 1, 2) == Rational(3, 4));
  }

  TEST_CASE("occupancy mixture reproduces the binomial") {
    const auto one = occupancy_mixture(1, 0.3);
    CHECK(one[1] == doctest::Approx(0.3).epsilon(1e-12));
    const auto five = occupancy_mixture(5, 0.3);
    for (long k = 0; k <= 5; ++k) {
      CHECK(std::fabs(five[static_cast<std::size_t>(k)] - pmf(bin(5, q(3, 10)), k).to_double()) < 1e-10);
    }
  }

  TEST_CASE("jump measures") {
    const LevyCharacteristics nb2(nb(2, q(1, 2)));
    CHECK(nb2.weight(1) == 1);
    CHECK(nb2.weight(2) == q(1, 4));
    const LevyCharacteristics p3(poi(3));
    CHECK(p3.weight(1) == 3);
    CHECK(p3.weight(2) == 0);
    CHECK(std::fabs(nb2.total_mass() - 2.0 * std::log(2.0)) < 1e-12);
    CHECK(nb2.inverse_tail(nb2.total_mass()) == 0);
    CHECK(nb2.inverse_tail(0.5 * nb2.tail(3) + 0.5 * nb2.tail(4)) == 3);
    CHECK_THROWS_AS(LevyCharacteristics(bin(3, q(1, 2))), Error);
  }

  TEST_CASE("jump tail ratio") {
    for (long k = 1; k <= 20; ++k) CHECK(levy_tail_ratio(2, q(1, 3), 2, q(1, 3), k) == doctest::Approx(1.0));
    const double phi1 = levy_tail_ratio(1, q(1, 2), 2, q(2, 5), 1);
    CHECK(phi1 == doctest::Approx(std::log(0.5) / (2.0 * std::log(0.4))).epsilon(1e-10));
    double prev = levy_tail_ratio(q(3, 2), q(3, 5), 1, q(2, 5), 1);
    for (long k = 2; k <= 50; ++k) {
      const double cur = levy_tail_ratio(q(3, 2), q(3, 5), 1, q(2, 5), k);
      CHECK(cur <= prev * (1 + 1e-12));
      prev = cur;
    }
  }

  TEST_CASE("negative binomial jump coupling") {
    CHECK(all_equal(levy_coupling_negbinom(2, q(1, 2), 2, q(1, 2), 4, 2000)));
    const auto s = levy_coupling_negbinom(1, q(3, 5), 1, q(1, 2), kDefaultSeed, 100000);
    const CouplingSummary sum = summarize(s, nb(1, q(3, 5)), nb(1, q(1, 2)));
    CHECK(sum.violations == 0);
    CHECK(sum.x1_fit.p_value > 1e-3);
    CHECK(sum.x2_fit.p_value > 1e-3);
    const auto t = levy_coupling_negbinom(2, q(7, 10), 1, q(2, 5), kDefaultSeed, 100000);
    CHECK(summarize(t, nb(2, q(7, 10)), nb(1, q(2, 5))).violations == 0);
    CHECK_THROWS_AS(levy_coupling_negbinom(1, q(1, 2), 1, q(3, 5), 1, 10), Error);
  }

  TEST_CASE("binomial below poisson coupling") {
    const auto s = binom_poisson_coupling(3, q(1, 5), 1, kDefaultSeed, 100000);
    const CouplingSummary sum = summarize(s, bin(3, q(1, 5)), poi(1));
    CHECK(sum.violations == 0);
    CHECK(sum.x1_fit.p_value > 1e-3);
    CHECK(sum.x2_fit.p_value > 1e-3);
    const Scalar lam = Scalar::floating(-std::log(1.0 - 0.4));
    for (const auto& x : binom_poisson_coupling(1, q(2, 5), lam, 5, 2000, true)) {
      CHECK(x.x1 == std::min<long>(x.x2, 1));
    }
    CHECK_THROWS_AS(binom_poisson_coupling(3, q(1, 2), 1, 1, 10), Error);
  }

  TEST_CASE("quantile coupling") {
    CHECK(all_equal(quantile_coupling(hyp(5, 6, 4), hyp(5, 6, 4), 1, 1000)));
    CHECK(all_dominated(quantile_coupling(bin(18, q(1, 2)), hyp(21, 23, 22), kDefaultSeed, 100000)));
    MassTable t(bin(4, q(1, 2)));
    CHECK(quantile(t, 0.5) == 2);
    CHECK(quantile(t, 0.0) == 0);
    const auto a = quantile_coupling(poi(1), nb(2, q(1, 2)), 17, 100);
    const auto b = quantile_coupling(poi(1), nb(2, q(1, 2)), 17, 100);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x1 == b[i].x1);
  }

  TEST_CASE("chi-square flags a wrong law") {
    std::map<long, long> counts;
    Rng rng(3);
    for (int i = 0; i < 20000; ++i) ++counts[sample_binomial(rng, 6, 0.5)];
    CHECK(chi_square_test(counts, bin(6, q(1, 2))).p_value > 1e-3);
    CHECK(chi_square_test(counts, bin(6, q(2, 5))).p_value < 1e-6);
    std::map<long, long> pc;
    for (int i = 0; i < 20000; ++i) ++pc[sample_poisson(rng, 45.0)];
    CHECK(chi_square_test(pc, poi(45)).p_value > 1e-3);
    CHECK(ks_statistic(pc, poi(45)) < ks_critical_value(20000, 1e-3));
  }
}
