#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "stochord/calculus.hpp"
#include "stochord/error.hpp"

using namespace stochord;
using namespace testing;

TEST_SUITE("calculus") {
  TEST_CASE("binomial cdf derivative") {
    for (double p : {0.1, 0.5, 0.9}) CHECK(binom_cdf_derivative(1, p, 0) == doctest::Approx(-1.0));
    CHECK(binom_cdf_derivative(6, 0.3, 6) == 0.0);
    const DerivativeCheck c = check_binom_cdf_derivative(5, 0.3, 2);
    CHECK(c.abs_error < 1e-6);
  }

  TEST_CASE("binomial pmf derivatives telescope") {
    const Scalar p = q(2, 7);
    Scalar sum(0);
    for (long k = 0; k <= 6; ++k) sum += binom_pmf_derivative(6, p, k);
    CHECK(sum == 0);
    CHECK(binom_pmf_derivative(1, p, 0) == -1);
  }

  TEST_CASE("negative binomial cdf derivative") {
    for (double p : {0.2, 0.7}) CHECK(negbinom_cdf_derivative(1.0, p, 1) == doctest::Approx(1.0));
    CHECK(check_negbinom_cdf_derivative(2.5, 0.4, 3).abs_error < 1e-6);
    for (long n = 1; n <= 5; ++n) {
      for (long k = 1; k <= 6; ++k) {
        const double p = 0.35;
        const long m = n + k - 2;
        const double mass = m == 0 ? 1.0 : pmf(bin(m, Scalar::floating(1.0 - p)), k - 1).to_double();
        CHECK(negbinom_cdf_derivative(static_cast<double>(n), p, k) ==
              doctest::Approx(static_cast<double>(m + 1) * mass).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("binomial difference function") {
    CHECK(eval_fk_binomial(2, 4, 1, 0.0) == 0.0);
    CHECK(eval_fk_binomial(2, 4, 1, 1.0) == 0.0);
    for (long i = 1; i <= 99; ++i) CHECK(eval_fk_binomial(2, 4, 1, i / 100.0) >= -1e-15);
    CHECK_THROWS_AS(eval_fk_binomial(4, 2, 1, 0.5), Error);
    CHECK_THROWS_AS(eval_fk_binomial(3, 4, 3, 0.5), Error);
  }

  TEST_CASE("negative binomial difference function") {
    for (long i = 1; i <= 99; ++i) CHECK(eval_fk_negbinom(2, 1, 2, i / 100.0) > 0.0);
    CHECK(std::fabs(eval_fk_negbinom(2, 1, 2, 1.0)) < 1e-15);
    CHECK_THROWS_AS(eval_fk_negbinom(1, 2, 2, 0.5), Error);
  }

  TEST_CASE("derivative sign changes") {
    const auto grid = default_grid();
    CHECK(grid.size() == 999);
    CHECK(sign_changes_fk_derivative(2, 4, 1, grid) <= 1);
    for (const auto& [n1, n2] : std::vector<std::pair<long, long>>{{3, 4}, {4, 7}, {6, 8}}) {
      CHECK(sign_changes_fk_derivative(n1, n2, n1 - 1, grid) <= 1);
    }
    CHECK(sign_changes_fk_negbinom_derivative(3, 1, 1, grid) == 0);
    CHECK(sign_changes_fk_negbinom_derivative(3, 1, 3, grid) <= 1);
  }

  TEST_CASE("difference function rises near zero") {
    for (const auto& [n1, n2] : std::vector<std::pair<long, long>>{{2, 3}, {2, 4}, {3, 5}}) {
      for (long k = 1; k < n1; ++k) {
        CHECK(fk_binomial_derivative(n1, n2, k, 1e-4) > 0);
        const double h = 1e-6;
        const double fd = (eval_fk_binomial(n1, n2, k, 0.3 + h) - eval_fk_binomial(n1, n2, k, 0.3 - h)) / (2 * h);
        CHECK(fk_binomial_derivative(n1, n2, k, 0.3) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
    const double h = 1e-6;
    const double fd = (eval_fk_negbinom(3, 2, 2, 0.4 + h) - eval_fk_negbinom(3, 2, 2, 0.4 - h)) / (2 * h);
    CHECK(fk_negbinom_derivative(3, 2, 2, 0.4) == doctest::Approx(fd).epsilon(1e-5));
  }
}
