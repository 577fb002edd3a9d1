#include "stochord/json_io.hpp"

#include "stochord/error.hpp"

namespace stochord {

namespace {

Scalar scalar_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidSpec, std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (v.is_string()) return Scalar(parse_rational(v.get<std::string>()));
  if (v.is_number_integer()) return Scalar(Rational(v.get<long>()));
  if (v.is_number_float()) return Scalar(parse_rational(format_double(v.get<double>())));
  throw Error(ErrorCode::InvalidSpec, std::string("field \"") + key + "\" must be a number or string");
}

long integer_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidSpec, std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    const Rational q = parse_rational(v.get<std::string>());
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  }
  throw Error(ErrorCode::InvalidSpec, std::string("field \"") + key + "\" must be an integer");
}

Json certificate_json(const Certificate& c) {
  Json out;
  out["kind"] = certificate_kind(c);
  if (const auto* cf = std::get_if<ClosedFormCertificate>(&c)) {
    out["case"] = to_string(cf->result.which);
    out["reversed"] = cf->reversed;
    Json conds = Json::array();
    for (const auto& k : cf->result.conditions) {
      conds.push_back({{"side", k.side}, {"expression", k.expression}, {"lhs", k.lhs}, {"rhs", k.rhs},
                       {"holds", k.holds}});
    }
    out["conditions"] = conds;
  } else if (const auto* h = std::get_if<HmlrVerdictCertificate>(&c)) {
    out["reversed"] = h->reversed;
    out["shape"] = to_string(h->hmlr.shape);
    out["turning_index"] = h->hmlr.turning_index ? Json(*h->hmlr.turning_index) : Json(nullptr);
    out["tail_certified"] = h->hmlr.tail_certified;
    out["tails"] = to_json(h->hmlr.tails);
  } else if (const auto* t = std::get_if<OracleTruncatedCertificate>(&c)) {
    out["k_cap"] = t->k_cap;
    out["residual_tail_bound"] = t->tail_bound;
    out["tail_certified"] = t->tail_certified;
  } else if (const auto* b = std::get_if<BernoulliConvolutionCertificate>(&c)) {
    out["criterion"] = to_string(b->criterion);
    out["reversed"] = b->reversed;
  }
  return out;
}

}  // namespace

Distribution distribution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw Error(ErrorCode::InvalidSpec, "expected an object with a \"family\" string");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "binomial") return Distribution::binomial(integer_field(j, "n"), scalar_field(j, "p"));
  if (family == "negbinomial") return Distribution::negbinomial(scalar_field(j, "r"), scalar_field(j, "p"));
  if (family == "hypergeometric") {
    return Distribution::hypergeometric(integer_field(j, "B"), integer_field(j, "W"), integer_field(j, "n"));
  }
  if (family == "poisson") return Distribution::poisson(scalar_field(j, "lambda"));
  if (family == "poisson_binomial") {
    if (!j.contains("p") || !j.at("p").is_array()) {
      throw Error(ErrorCode::InvalidSpec, "poisson_binomial needs a \"p\" array");
    }
    std::vector<Scalar> p;
    for (const auto& v : j.at("p")) p.push_back(scalar_field(Json{{"v", v}}, "v"));
    return Distribution::poisson_binomial(std::move(p));
  }
  throw Error(ErrorCode::InvalidSpec, "unknown family \"" + family + "\"");
}

Distribution parse_distribution(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed JSON: ") + e.what());
  }
  return distribution_from_json(j);
}

Json to_json(const Scalar& s) { return s.to_string(); }

Json to_json(const Extended& e) { return e.to_string(); }

Json to_json(const Distribution& d) {
  Json out;
  out["family"] = to_string(d.family());
  if (const auto* b = d.try_as<BinomialParams>()) {
    out["n"] = b->n;
    out["p"] = to_json(b->p);
  } else if (const auto* nb = d.try_as<NegBinomialParams>()) {
    out["r"] = to_json(nb->r);
    out["p"] = to_json(nb->p);
  } else if (const auto* h = d.try_as<HypergeometricParams>()) {
    out["B"] = h->black;
    out["W"] = h->white;
    out["n"] = h->n;
  } else if (const auto* po = d.try_as<PoissonParams>()) {
    out["lambda"] = to_json(po->lambda);
  } else if (const auto* pb = d.try_as<PoissonBinomialParams>()) {
    Json arr = Json::array();
    for (const auto& x : pb->p) arr.push_back(to_json(x));
    out["p"] = arr;
  }
  return out;
}

Json to_json(const TailConditions& t) {
  Json out;
  out["k_lower"] = t.k_lower;
  out["k_upper"] = t.k_upper ? Json(*t.k_upper) : Json("inf");
  out["left_value"] = to_json(t.left_value);
  out["right_value"] = to_json(t.right_value);
  out["right_is_limit"] = t.right_is_limit;
  out["rho"] = t.rho ? to_json(*t.rho) : Json(nullptr);
  out["left_holds"] = t.left_holds;
  out["right_holds"] = t.right_holds;
  return out;
}

Json to_json(const OrderingVerdict& v) {
  Json out;
  out["relation"] = to_string(v.relation);
  out["certificate"] = certificate_json(v.certificate);
  if (v.witnesses) out["witnesses"] = {{"k_minus", v.witnesses->k_minus}, {"k_plus", v.witnesses->k_plus}};
  if (!v.crossings.empty()) out["crossings"] = v.crossings;
  if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
  return out;
}

Json to_json(const DominanceReport& r) {
  Json out;
  out["relation"] = to_string(r.relation);
  out["crossings"] = r.crossings;
  if (const auto* t = std::get_if<TruncatedMode>(&r.mode)) {
    out["mode"] = {{"kind", "truncated"}, {"k_cap", t->k_cap}, {"tail_bound", t->tail_bound},
                   {"tail_certified", t->tail_certified}};
  } else {
    out["mode"] = {{"kind", "exact"}};
  }
  if (r.witnesses) out["witnesses"] = {{"k_minus", r.witnesses->k_minus}, {"k_plus", r.witnesses->k_plus}};
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

Relation relation_from_string(std::string_view s) {
  for (Relation r : {Relation::LeSt, Relation::GeSt, Relation::Equal, Relation::Incomparable, Relation::Unknown}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorCode::InvalidSpec, "unknown relation \"" + std::string(s) + "\"");
}

VerdictSummary verdict_summary_from_json(const Json& j) {
  VerdictSummary out;
  out.relation = relation_from_string(j.at("relation").get<std::string>());
  out.kind = j.at("certificate").at("kind").get<std::string>();
  if (j.contains("witnesses")) {
    out.witnesses = Witnesses{j.at("witnesses").at("k_minus").get<long>(), j.at("witnesses").at("k_plus").get<long>()};
  }
  return out;
}

Json sample_line(long index, const CouplingSample& s) {
  Json out{{"i", index}, {"x1", s.x1}, {"x2", s.x2}};
  if (s.trace) {
    Json t;
    t["events"] = s.trace->events;
    if (!s.trace->draws.empty()) t["draws"] = s.trace->draws;
    if (!s.trace->occupancy.empty()) t["occupancy"] = s.trace->occupancy;
    if (!s.trace->points.empty()) t["points"] = s.trace->points;
    if (!s.trace->counts.empty()) t["counts"] = s.trace->counts;
    out["trace"] = t;
  }
  return out;
}

Json summary_line(const CouplingSummary& s) {
  Json out{{"violations", s.violations}, {"chi2_p_x1", s.x1_fit.p_value}, {"chi2_p_x2", s.x2_fit.p_value}};
  out["samples"] = s.samples;
  if (s.first_violation) out["first_violation"] = *s.first_violation;
  return out;
}

}  // namespace stochord
