#include "stochord/statistics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "stochord/error.hpp"

namespace stochord {

ChiSquareResult chi_square_test(const std::map<long, long>& counts, const Distribution& d) {
  long total = 0;
  for (const auto& [k, c] : counts) total += c;
  if (total == 0) throw Error(ErrorCode::InvalidArgument, "no samples");
  const double n = static_cast<double>(total);
  const SupportBounds sup = support(d);
  MassTable table(d);

  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin current;
  double remaining = 1.0;  // probability mass at or above k
  long observed_below = 0;
  long k = sup.k_min;
  for (; !sup.k_max || k < *sup.k_max; ++k) {
    if (n * remaining < 10.0) break;
    const double mass = table.pmf(k).to_double();
    const auto it = counts.find(k);
    const long c = it == counts.end() ? 0 : it->second;
    current.expected += n * mass;
    current.observed += static_cast<double>(c);
    observed_below += c;
    remaining = table.survival(k + 1).to_double();
    if (current.expected >= 5.0) {
      bins.push_back(current);
      current = Bin{};
    }
  }
  // Everything from k on forms the last bin, together with any open bin.
  current.expected += n * remaining;
  current.observed += static_cast<double>(total - observed_below);
  if (current.expected >= 5.0 || bins.empty()) {
    bins.push_back(current);
  } else {
    bins.back().expected += current.expected;
    bins.back().observed += current.observed;
  }

  ChiSquareResult out;
  for (const auto& b : bins) {
    if (b.expected > 0) {
      out.statistic += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
    } else if (b.observed > 0) {
      out.statistic = INFINITY;
    }
  }
  out.degrees_of_freedom = static_cast<long>(bins.size()) - 1;
  if (out.degrees_of_freedom < 1) {
    out.p_value = out.statistic == 0 ? 1.0 : 0.0;
    return out;
  }
  if (!std::isfinite(out.statistic)) {
    out.p_value = 0.0;
    return out;
  }
  const boost::math::chi_squared dist(static_cast<double>(out.degrees_of_freedom));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

double ks_statistic(const std::map<long, long>& counts, const Distribution& d) {
  long total = 0;
  for (const auto& [k, c] : counts) total += c;
  if (total == 0) throw Error(ErrorCode::InvalidArgument, "no samples");
  MassTable table(d);
  const SupportBounds sup = support(d);
  long last = counts.empty() ? sup.k_min : counts.rbegin()->first;
  long cum = 0;
  double worst = 0.0;
  auto it = counts.begin();
  for (long k = sup.k_min; k <= last; ++k) {
    while (it != counts.end() && it->first <= k) cum += (it++)->second;
    const double emp = static_cast<double>(cum) / static_cast<double>(total);
    worst = std::max(worst, std::fabs(emp - table.cdf(k).to_double()));
  }
  return worst;
}

double ks_critical_value(long samples, double alpha) {
  return std::sqrt(-std::log(alpha / 2.0) / (2.0 * static_cast<double>(samples)));
}

}  // namespace stochord
