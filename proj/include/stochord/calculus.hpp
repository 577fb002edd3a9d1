#pragma once

#include <vector>

#include "stochord/scalar.hpp"

namespace stochord {

struct DerivativeCheck {
  double analytic = 0.0;
  double finite_difference = 0.0;
  double h = 0.0;
  double abs_error = 0.0;
};

/// d/dp b_{n,p}({0..k}) = -n b_{n-1,p}({k}).
double binom_cdf_derivative(long n, double p, long k);

/// d/dp b_{n,p}({k}) = -n [b_{n-1,p}({k}) - b_{n-1,p}({k-1})], exact for
/// rational p.
Scalar binom_pmf_derivative(long n, const Scalar& p, long k);

/// d/dp of the negative binomial mass of {0..k-1}:
/// k C(r+k-1, k) (1-p)^(k-1) p^(r-1).
double negbinom_cdf_derivative(double r, double p, long k);

/// Central difference of the binomial cdf at k in p.
DerivativeCheck check_binom_cdf_derivative(long n, double p, long k, double h = 1e-5);

/// Central difference of the negative binomial mass of {0..k-1} in p.
DerivativeCheck check_negbinom_cdf_derivative(double r, double p, long k, double h = 1e-5);

/// b_{n1,pi(p)}({0..k}) - b_{n2,p}({0..k}) with pi(p) = 1 - (1-p)^(n2/n1).
/// Requires n1 < n2 (ParameterOrder) and 1 <= k <= n1-1.
double eval_fk_binomial(long n1, long n2, long k, double p);

/// Mass of {0..k-1} under the negative binomial (r1, p^R) minus the same
/// under (r2, p), with R = r2/r1. Requires r1 > r2 (ParameterOrder), k >= 1.
double eval_fk_negbinom(double r1, double r2, long k, double p);

/// 999 interior points i/1000.
std::vector<double> default_grid(long points = 999);

/// Sign changes across the grid of the bracket in the closed-form
/// derivative of eval_fk_binomial.
long sign_changes_fk_derivative(long n1, long n2, long k, const std::vector<double>& grid);

/// Same for eval_fk_negbinom.
long sign_changes_fk_negbinom_derivative(double r1, double r2, long k, const std::vector<double>& grid);

/// Closed-form derivative of eval_fk_binomial.
double fk_binomial_derivative(long n1, long n2, long k, double p);

/// Closed-form derivative of eval_fk_negbinom.
double fk_negbinom_derivative(double r1, double r2, long k, double p);

}  // namespace stochord
