#include "common.hpp"
#include "doctest.h"
#include "stochord/error.hpp"
#include "stochord/json_io.hpp"
#include "stochord/verify.hpp"

using namespace stochord;
using namespace testing;

TEST_SUITE("cli") {
  TEST_CASE("distribution specs round-trip") {
    for (const Distribution& d : {bin(18, q(1, 2)), hyp(400, 509, 500), nb(q(5, 2), parse_rational("0.3")), poi(q(3, 2)),
                                  Distribution::poisson_binomial({q(1, 2), q(1, 3)})}) {
      CHECK(distribution_from_json(to_json(d)).identical(d));
    }
    const Distribution d = parse_distribution(R"({"family":"binomial","n":18,"p":"0.5106"})");
    CHECK(d.as<BinomialParams>().p == q(2553, 5000));
    CHECK(parse_distribution(R"({"family":"poisson","lambda":1.5})").as<PoissonParams>().lambda == q(3, 2));
  }

  TEST_CASE("malformed specs are rejected") {
    CHECK_THROWS_AS(parse_distribution("{"), Error);
    CHECK_THROWS_AS(parse_distribution(R"({"family":"binomal","n":2,"p":"1/2"})"), Error);
    CHECK_THROWS_AS(parse_distribution(R"({"family":"binomial","n":2})"), Error);
    CHECK_THROWS_AS(parse_distribution(R"({"family":"binomial","n":2,"p":"2"})"), Error);
  }

  TEST_CASE("verdicts serialize with fixed field names") {
    const OrderingVerdict v = decide(hyp(400, 509, 500), hyp(310, 710, 700));
    const Json j = to_json(v);
    CHECK(j.at("relation") == "incomparable");
    CHECK(j.at("certificate").at("kind") == "oracle_exact");
    CHECK(j.at("witnesses").at("k_minus") == 44);
    CHECK(j.at("witnesses").at("k_plus") == 45);
    const VerdictSummary back = verdict_summary_from_json(Json::parse(j.dump()));
    CHECK(back.relation == Relation::Incomparable);
    CHECK(back.kind == "oracle_exact");
    REQUIRE(back.witnesses.has_value());
    CHECK(back.witnesses->k_plus == 45);
  }

  TEST_CASE("exact scalars render as rational strings") {
    CHECK(to_json(q(2553, 5000)) == "2553/5000");
    CHECK(to_json(Scalar::floating(0.25)) == "0.25");
  }

  TEST_CASE("coupling lines") {
    CouplingSample s;
    s.x1 = 1;
    s.x2 = 3;
    CHECK(sample_line(0, s).dump() == R"({"i":0,"x1":1,"x2":3})");
    CouplingSummary sum;
    sum.samples = 10;
    CHECK(summary_line(sum).at("violations") == 0);
  }

  TEST_CASE("suite names") {
    CHECK_THROWS_AS(run_suite("no-such-suite"), Error);
    const auto names = suite_names();
    CHECK(std::find(names.begin(), names.end(), "paper-counterexamples") != names.end());
    CHECK(std::find(names.begin(), names.end(), "theorem1-grid") != names.end());
    CHECK(std::find(names.begin(), names.end(), "derivatives") != names.end());
  }
}
