#include "stochord/calculus.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/negative_binomial.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "stochord/distribution.hpp"
#include "stochord/error.hpp"

namespace stochord {

namespace {

double binom_pmf(long n, double p, long k) {
  if (k < 0 || k > n) return 0.0;
  if (n == 0) return 1.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(static_cast<double>(n), p),
                          static_cast<double>(k));
}

double binom_cdf(long n, double p, long k) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  return boost::math::cdf(boost::math::binomial_distribution<double>(static_cast<double>(n), p),
                          static_cast<double>(k));
}

// Mass of {0..k-1}.
double negbinom_lower(double r, double p, long k) {
  if (k <= 0) return 0.0;
  if (p >= 1.0) return 1.0;
  return boost::math::cdf(boost::math::negative_binomial_distribution<double>(r, p),
                          static_cast<double>(k - 1));
}

// C(r+k-1, k) for real r.
double rising(double r, long k) {
  double out = 1.0;
  for (long l = 1; l <= k; ++l) out *= (r + static_cast<double>(l - 1)) / static_cast<double>(l);
  return out;
}

void check_binomial_fk(long n1, long n2, long k) {
  if (n1 < 1 || n1 >= n2) throw Error(ErrorCode::ParameterOrder, "need 1 <= n1 < n2");
  if (k < 1 || k > n1 - 1) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= n1-1");
}

void check_negbinom_fk(double r1, double r2, long k) {
  if (!(r2 > 0) || !(r1 > r2)) throw Error(ErrorCode::ParameterOrder, "need r1 > r2 > 0");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "need k >= 1");
}

// Difference of two positive terms; relative round-off counts as zero.
struct Bracket {
  double first = 0.0;
  double second = 0.0;
  double value() const { return first - second; }
  int sign() const {
    const double v = value();
    return std::fabs(v) <= 1e-12 * (std::fabs(first) + std::fabs(second)) ? 0 : (v > 0 ? 1 : -1);
  }
};

long count_changes(const std::vector<Bracket>& values) {
  long changes = 0;
  int last = 0;
  for (const Bracket& b : values) {
    const int s = b.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Bracket binomial_bracket(long n1, long n2, long k, double p) {
  const double R = static_cast<double>(n2) / static_cast<double>(n1);
  const double qR = std::pow(1.0 - p, R);
  return {boost::math::binomial_coefficient<double>(static_cast<unsigned>(n2 - 1), static_cast<unsigned>(k)) *
             std::pow(p / (1.0 - p), static_cast<double>(k)),
          boost::math::binomial_coefficient<double>(static_cast<unsigned>(n1 - 1), static_cast<unsigned>(k)) *
              std::pow((1.0 - qR) / qR, static_cast<double>(k))};
}

Bracket negbinom_bracket(double r1, double r2, long k, double p) {
  const double R = r2 / r1;
  return {rising(r1, k) * R * std::pow(1.0 - std::pow(p, R), static_cast<double>(k - 1)),
          rising(r2, k) * std::pow(1.0 - p, static_cast<double>(k - 1))};
}

}  // namespace

double binom_cdf_derivative(long n, double p, long k) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  return -static_cast<double>(n) * binom_pmf(n - 1, p, k);
}

Scalar binom_pmf_derivative(long n, const Scalar& p, long k) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  auto mass = [&](long j) -> Scalar {
    if (j < 0 || j > n - 1) return Scalar(0);
    if (n == 1) return Scalar(1);
    return pmf(Distribution::binomial(n - 1, p), j);
  };
  return Scalar(-n) * (mass(k) - mass(k - 1));
}

double negbinom_cdf_derivative(double r, double p, long k) {
  if (!(r > 0) || k < 1) throw Error(ErrorCode::InvalidArgument, "need r > 0 and k >= 1");
  return static_cast<double>(k) * rising(r, k) * std::pow(1.0 - p, static_cast<double>(k - 1)) *
         std::pow(p, r - 1.0);
}

DerivativeCheck check_binom_cdf_derivative(long n, double p, long k, double h) {
  DerivativeCheck out;
  out.h = h;
  out.analytic = binom_cdf_derivative(n, p, k);
  out.finite_difference = (binom_cdf(n, p + h, k) - binom_cdf(n, p - h, k)) / (2 * h);
  out.abs_error = std::fabs(out.analytic - out.finite_difference);
  return out;
}

DerivativeCheck check_negbinom_cdf_derivative(double r, double p, long k, double h) {
  DerivativeCheck out;
  out.h = h;
  out.analytic = negbinom_cdf_derivative(r, p, k);
  out.finite_difference = (negbinom_lower(r, p + h, k) - negbinom_lower(r, p - h, k)) / (2 * h);
  out.abs_error = std::fabs(out.analytic - out.finite_difference);
  return out;
}

double eval_fk_binomial(long n1, long n2, long k, double p) {
  check_binomial_fk(n1, n2, k);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in [0,1]");
  const double R = static_cast<double>(n2) / static_cast<double>(n1);
  const double mapped = 1.0 - std::pow(1.0 - p, R);
  return binom_cdf(n1, mapped, k) - binom_cdf(n2, p, k);
}

double eval_fk_negbinom(double r1, double r2, long k, double p) {
  check_negbinom_fk(r1, r2, k);
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in (0,1]");
  const double R = r2 / r1;
  return negbinom_lower(r1, std::pow(p, R), k) - negbinom_lower(r2, p, k);
}

std::vector<double> default_grid(long points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (long i = 1; i <= points; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(points + 1));
  return grid;
}

double fk_binomial_derivative(long n1, long n2, long k, double p) {
  check_binomial_fk(n1, n2, k);
  return static_cast<double>(n2) * std::pow(1.0 - p, static_cast<double>(n2 - 1)) *
         binomial_bracket(n1, n2, k, p).value();
}

double fk_negbinom_derivative(double r1, double r2, long k, double p) {
  check_negbinom_fk(r1, r2, k);
  return static_cast<double>(k) * std::pow(p, r2 - 1.0) * negbinom_bracket(r1, r2, k, p).value();
}

long sign_changes_fk_derivative(long n1, long n2, long k, const std::vector<double>& grid) {
  check_binomial_fk(n1, n2, k);
  std::vector<Bracket> values;
  values.reserve(grid.size());
  for (double p : grid) values.push_back(binomial_bracket(n1, n2, k, p));
  return count_changes(values);
}

long sign_changes_fk_negbinom_derivative(double r1, double r2, long k, const std::vector<double>& grid) {
  check_negbinom_fk(r1, r2, k);
  std::vector<Bracket> values;
  values.reserve(grid.size());
  for (double p : grid) values.push_back(negbinom_bracket(r1, r2, k, p));
  return count_changes(values);
}

}  // namespace stochord
