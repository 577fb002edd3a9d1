#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "stochord/couplings.hpp"
#include "stochord/distribution.hpp"
#include "stochord/oracle.hpp"
#include "stochord/ordering.hpp"

namespace stochord {

using Json = nlohmann::ordered_json;

/// {"family":"binomial","n":18,"p":"1/2"} and friends. Probability and rate
/// parameters accept "a/b" strings, decimal strings and JSON numbers.
Distribution distribution_from_json(const Json& j);
Distribution parse_distribution(std::string_view text);
Json to_json(const Distribution& d);

Json to_json(const Scalar& s);
Json to_json(const Extended& e);
Json to_json(const OrderingVerdict& v);
Json to_json(const DominanceReport& r);
Json to_json(const TailConditions& t);

/// Relation, certificate kind and witnesses of a serialized verdict.
struct VerdictSummary {
  Relation relation = Relation::Unknown;
  std::string kind;
  std::optional<Witnesses> witnesses;
};
VerdictSummary verdict_summary_from_json(const Json& j);
Relation relation_from_string(std::string_view s);

Json sample_line(long index, const CouplingSample& s);
Json summary_line(const CouplingSummary& s);

}  // namespace stochord
