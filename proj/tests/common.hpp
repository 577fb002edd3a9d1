#pragma once

#include "stochord/distribution.hpp"

namespace testing {

inline stochord::Scalar q(long a, long b) { return stochord::Scalar::exact(a, b); }
inline stochord::Distribution bin(long n, stochord::Scalar p) { return stochord::Distribution::binomial(n, std::move(p)); }
inline stochord::Distribution hyp(long b, long w, long n) { return stochord::Distribution::hypergeometric(b, w, n); }
inline stochord::Distribution nb(stochord::Scalar r, stochord::Scalar p) {
  return stochord::Distribution::negbinomial(std::move(r), std::move(p));
}
inline stochord::Distribution poi(stochord::Scalar l) { return stochord::Distribution::poisson(std::move(l)); }

}  // namespace testing
