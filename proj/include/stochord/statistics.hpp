#pragma once

#include <map>

#include "stochord/distribution.hpp"

namespace stochord {

struct ChiSquareResult {
  double statistic = 0.0;
  long degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed value counts against a distribution,
/// with adjacent values pooled until every bin expects at least 5 draws.
ChiSquareResult chi_square_test(const std::map<long, long>& counts, const Distribution& d);

/// sup_k |F_empirical(k) - F(k)|.
double ks_statistic(const std::map<long, long>& counts, const Distribution& d);

/// Asymptotic Kolmogorov-Smirnov bound sqrt(-ln(alpha/2) / (2N)).
double ks_critical_value(long samples, double alpha);

}  // namespace stochord
