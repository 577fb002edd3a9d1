#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "stochord/error.hpp"
#include "stochord/oracle.hpp"

using namespace stochord;
using namespace testing;

namespace {
Scalar upper_tail(const Distribution& d, long k) { return Scalar(1) - cdf(d, k); }
}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("hypergeometric counterexample crosses once") {
    const DominanceReport r = dominance_exact(hyp(400, 509, 500), hyp(310, 710, 700));
    CHECK(r.relation == Relation::Incomparable);
    CHECK(r.exact_mode());
    CHECK(r.crossings == std::vector<long>{45});
    REQUIRE(r.witnesses.has_value());
    CHECK(r.witnesses->k_minus == 44);
    CHECK(r.witnesses->k_plus == 45);
  }

  TEST_CASE("witnesses verify exactly against the upper tails") {
    const Distribution p = bin(5, q(1, 2));
    const Distribution qd = bin(6, q(3, 10));
    const DominanceReport r = dominance_exact(p, qd);
    REQUIRE(r.relation == Relation::Incomparable);
    CHECK(upper_tail(p, r.witnesses->k_minus) < upper_tail(qd, r.witnesses->k_minus));
    CHECK(upper_tail(p, r.witnesses->k_plus) > upper_tail(qd, r.witnesses->k_plus));
    CHECK(crossing_points(p, qd) == std::vector<long>{5});
  }

  TEST_CASE("same size binomials are ordered in p") {
    const DominanceReport r = dominance_exact(bin(7, q(1, 5)), bin(7, q(1, 3)));
    CHECK(r.relation == Relation::LeSt);
    CHECK(r.crossings.empty());
    CHECK(dominance_exact(bin(7, q(1, 3)), bin(7, q(1, 5))).relation == Relation::GeSt);
    CHECK(dominance_exact(hyp(4, 5, 3), hyp(4, 5, 3)).relation == Relation::Equal);
  }

  TEST_CASE("exact mode needs finite supports") {
    CHECK_THROWS_AS(dominance_exact(poi(1), poi(2)), Error);
  }

  TEST_CASE("truncated scans") {
    const DominanceReport r = dominance_truncated(nb(1, q(1, 2)), nb(1, q(1, 4)), 200, 1e-12);
    CHECK(r.relation == Relation::LeSt);
    CHECK_FALSE(r.exact_mode());
    const DominanceReport same = dominance_truncated(poi(1), poi(1), 200, 1e-12);
    CHECK(same.relation == Relation::Equal);
    CHECK(std::holds_alternative<TruncatedMode>(same.mode));
  }

  TEST_CASE("poisson below negative binomial when the zero masses are ordered") {
    for (long i = 1; i <= 9; ++i) {
      for (long r = 1; r <= 4; ++r) {
        const Scalar p = q(i, 10);
        const double lam = -static_cast<double>(r) * std::log(p.to_double()) * 0.9;
        const Scalar lambda = Scalar::floating(lam);
        const DominanceReport rep = dominance_truncated(poi(lambda), nb(r, p), 500, 1e-12);
        CHECK(rep.relation == Relation::LeSt);
      }
    }
  }

  TEST_CASE("adaptive truncation certifies the tail") {
    const DominanceReport r = dominance(poi(1), nb(2, q(1, 2)));
    CHECK(r.relation == Relation::LeSt);
    const auto* t = std::get_if<TruncatedMode>(&r.mode);
    REQUIRE(t != nullptr);
    CHECK(t->tail_certified);
    CHECK(dominance(poi(2), poi(1)).relation == Relation::GeSt);
  }

  TEST_CASE("ordered pairs have no crossings") {
    CHECK(crossing_points(bin(3, q(1, 2)), bin(3, q(2, 3))).empty());
    CHECK(crossing_points(hyp(400, 509, 500), hyp(310, 710, 700)) == std::vector<long>{45});
  }

  TEST_CASE("relation names and mirror") {
    CHECK(to_string(Relation::LeSt) == "le_st");
    CHECK(to_string(Relation::Incomparable) == "incomparable");
    CHECK(mirror(Relation::LeSt) == Relation::GeSt);
    CHECK(mirror(Relation::Equal) == Relation::Equal);
  }
}
