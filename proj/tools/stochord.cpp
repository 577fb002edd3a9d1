#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stochord/couplings.hpp"
#include "stochord/error.hpp"
#include "stochord/json_io.hpp"
#include "stochord/likelihood.hpp"
#include "stochord/oracle.hpp"
#include "stochord/ordering.hpp"
#include "stochord/verify.hpp"

namespace {

using namespace stochord;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnknown = 3;

struct Config {
  std::string first;
  std::string second;
  std::string method = "quantile";
  long samples = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<long> k_cap;
  double epsilon = 1e-12;
  std::string suite = "acceptance";
  std::string output;
};

std::uint64_t effective_seed(const Config& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("STOCHORD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "STOCHORD_SEED must be an unsigned 64-bit integer");
    }
  }
  return kDefaultSeed;
}

// Inline JSON, or a path to a file holding it.
Distribution load_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_distribution(arg);
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::InvalidSpec, "cannot read \"" + arg + "\" (expected inline JSON or a file)");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_distribution(buffer.str());
}

OraclePolicy oracle_policy(const Config& c) {
  if (!(c.epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (c.k_cap && *c.k_cap < 0) throw Error(ErrorCode::InvalidArgument, "k-cap must be nonnegative");
  OraclePolicy policy;
  policy.k_cap = c.k_cap;
  policy.epsilon = c.epsilon;
  return policy;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open output \"" + path + "\"");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int relation_exit(Relation r) { return r == Relation::Unknown ? kExitUnknown : kExitOk; }

int cmd_decide(const Config& c) {
  const Distribution p = load_spec(c.first);
  const Distribution q = load_spec(c.second);
  DecidePolicy policy;
  policy.oracle = oracle_policy(c);
  const OrderingVerdict v = decide(p, q, policy);
  Output out(c.output);
  out.stream() << to_json(v).dump(2) << "\n";
  return relation_exit(v.relation);
}

int cmd_oracle(const Config& c) {
  const Distribution p = load_spec(c.first);
  const Distribution q = load_spec(c.second);
  const DominanceReport r = dominance(p, q, oracle_policy(c));
  Output out(c.output);
  out.stream() << to_json(r).dump(2) << "\n";
  return relation_exit(r.relation);
}

// ---------------------------------------------------------------- explain

void explain_closed_form(std::ostream& os, const char* label, const std::optional<ClosedFormResult>& r) {
  os << "closed form " << label << ": ";
  if (!r) {
    os << "not applicable\n";
    return;
  }
  os << to_string(r->which) << ", " << (r->le_st ? "ordered" : "not ordered") << "\n";
  for (const Condition& cond : r->conditions) {
    os << "  [" << cond.side << "] " << cond.expression << ": " << cond.lhs << " vs " << cond.rhs << " -> "
       << (cond.holds ? "holds" : "fails") << "\n";
  }
}

void explain_profile(std::ostream& os, const Distribution& p, const Distribution& q, const Config& c) {
  LikelihoodProfile prof;
  try {
    prof = likelihood_profile(p, q, c.k_cap);
  } catch (const Error& e) {
    os << "likelihood ratio: unavailable (" << e.what() << ")\n";
    return;
  }
  os << "likelihood ratio lambda(k) = P({k})/Q({k}): shape " << to_string(prof.shape);
  if (prof.turning_index) os << ", turning at k=" << *prof.turning_index;
  if (prof.k_cap) os << ", scanned to k=" << *prof.k_cap << (prof.tail_certified ? " (tail certified)" : "");
  os << "\n";
  const std::size_t n = prof.values.size();
  constexpr std::size_t kHead = 30;
  constexpr std::size_t kTail = 10;
  bool elided = false;
  for (std::size_t i = 0; i < n; ++i) {
    const long k = prof.values[i].first;
    const bool near_turn = prof.turning_index && std::labs(k - *prof.turning_index) <= 1;
    if (i < kHead || i + kTail >= n || near_turn) {
      os << "  k=" << k << "  " << format_double(prof.values[i].second.to_double()) << "\n";
      elided = false;
    } else if (!elided) {
      os << "  ...\n";
      elided = true;
    }
  }
  try {
    const TailConditions t = tail_conditions(p, q);
    os << "left tail: lambda(" << t.k_lower << ") = " << format_double(t.left_value.to_double()) << " >= 1 "
       << (t.left_holds ? "holds" : "fails") << "\n";
    os << "right tail: ";
    if (t.right_is_limit) {
      os << "lim lambda(k)";
    } else {
      os << "lambda(" << *t.k_upper << ")";
    }
    os << " = " << format_double(t.right_value.to_double()) << " <= 1 " << (t.right_holds ? "holds" : "fails") << "\n";
    const MembershipResult m = in_H(p, q, c.k_cap);
    os << "half-monotone likelihood ratio class: " << (m.member ? "member" : "not a member") << "\n";
  } catch (const Error& e) {
    os << "tail conditions: unavailable (" << e.what() << ")\n";
  }
}

std::optional<std::vector<Scalar>> bernoulli_vector(const Distribution& d) {
  if (const auto* pb = d.try_as<PoissonBinomialParams>()) return pb->p;
  if (const auto* b = d.try_as<BinomialParams>()) return std::vector<Scalar>(static_cast<std::size_t>(b->n), b->p);
  return std::nullopt;
}

void explain_bernoulli(std::ostream& os, const Distribution& p, const Distribution& q) {
  if (!p.try_as<PoissonBinomialParams>() && !q.try_as<PoissonBinomialParams>()) return;
  const auto a = bernoulli_vector(p);
  const auto b = bernoulli_vector(q);
  if (!a || !b) return;
  const BcSufficiency fwd = bc_sufficient(*a, *b);
  const BcSufficiency bwd = bc_sufficient(*b, *a);
  auto yes = [](bool v) { return v ? "holds" : "fails"; };
  os << "bernoulli convolution, P <=st Q: success products " << yes(fwd.success_products) << ", failure products "
     << yes(fwd.failure_products) << "\n";
  os << "bernoulli convolution, Q <=st P: success products " << yes(bwd.success_products) << ", failure products "
     << yes(bwd.failure_products) << "\n";
  auto ma = [&](const Distribution& conv, const Distribution& bin, const char* conv_name) {
    const auto* bp = bin.try_as<BinomialParams>();
    const auto* cp = conv.try_as<PoissonBinomialParams>();
    if (!bp || !cp || static_cast<long>(cp->p.size()) != bp->n) return;
    if (bp->p.sign() <= 0 || bp->p >= Scalar(1)) return;
    const bool below = ma_criterion(cp->p, bp->n, bp->p, MaDirection::ConvolutionBelowBinomial);
    const bool above = ma_criterion(cp->p, bp->n, bp->p, MaDirection::BinomialBelowConvolution);
    os << "single-mass criterion: " << conv_name << " <=st binomial " << yes(below) << ", binomial <=st " << conv_name
       << " " << yes(above) << "\n";
  };
  ma(p, q, "P");
  ma(q, p, "Q");
}

int cmd_explain(const Config& c) {
  const Distribution p = load_spec(c.first);
  const Distribution q = load_spec(c.second);
  DecidePolicy policy;
  policy.oracle = oracle_policy(c);
  const OrderingVerdict v = decide(p, q, policy);
  Output out(c.output);
  std::ostream& os = out.stream();
  os << "P = " << p.describe() << "\nQ = " << q.describe() << "\n";
  os << "verdict: " << to_string(v.relation) << " (certificate " << certificate_kind(v.certificate) << ")\n";
  if (v.witnesses) {
    os << "witnesses: k_minus=" << v.witnesses->k_minus << " k_plus=" << v.witnesses->k_plus << "\n";
  }
  if (!v.crossings.empty()) {
    os << "crossings:";
    for (long k : v.crossings) os << " " << k;
    os << "\n";
  }
  if (!v.diagnostic.empty()) os << "diagnostic: " << v.diagnostic << "\n";
  explain_closed_form(os, "P <=st Q", decide_closed_form(p, q));
  explain_closed_form(os, "Q <=st P", decide_closed_form(q, p));
  explain_bernoulli(os, p, q);
  explain_profile(os, p, q, c);
  return relation_exit(v.relation);
}

// ---------------------------------------------------------------- couple

template <class T>
const T& require_family(const Distribution& d, const std::string& method, const char* family) {
  const T* params = d.try_as<T>();
  if (!params) {
    throw Error(ErrorCode::InvalidArgument, "method " + method + " needs a " + family + " spec, got " + d.describe());
  }
  return *params;
}

int cmd_couple(const Config& c) {
  const Distribution p = load_spec(c.first);
  const Distribution q = load_spec(c.second);
  if (c.samples <= 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const std::uint64_t seed = effective_seed(c);
  std::vector<CouplingSample> samples;
  if (c.method == "explicit" || c.method == "occupancy") {
    const auto& a = require_family<BinomialParams>(p, c.method, "binomial");
    const auto& b = require_family<BinomialParams>(q, c.method, "binomial");
    samples = c.method == "explicit" ? binomial_explicit_coupling(a.n, a.p, b.n, b.p, seed, c.samples)
                                     : binomial_occupancy_coupling(a.n, a.p, b.n, b.p, seed, c.samples);
  } else if (c.method == "levy") {
    const auto& a = require_family<NegBinomialParams>(p, c.method, "negbinomial");
    const auto& b = require_family<NegBinomialParams>(q, c.method, "negbinomial");
    samples = levy_coupling_negbinom(a.r, a.p, b.r, b.p, seed, c.samples);
  } else if (c.method == "poissonize") {
    const auto& a = require_family<BinomialParams>(p, c.method, "binomial");
    const auto& b = require_family<PoissonParams>(q, c.method, "poisson");
    samples = binom_poisson_coupling(a.n, a.p, b.lambda, seed, c.samples);
  } else if (c.method == "quantile") {
    samples = quantile_coupling(p, q, seed, c.samples);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown method \"" + c.method + "\"");
  }
  const CouplingSummary summary = summarize(samples, p, q);
  Output out(c.output);
  std::ostream& os = out.stream();
  for (std::size_t i = 0; i < samples.size(); ++i) os << sample_line(static_cast<long>(i), samples[i]).dump() << "\n";
  os << summary_line(summary).dump() << "\n";
  return summary.violations > 0 ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c) {
  VerifyOptions options;
  options.seed = effective_seed(c);
  if (c.samples <= 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  options.samples = c.samples;
  const std::vector<CriterionResult> results = run_suite(c.suite, options);
  Json report;
  report["suite"] = c.suite;
  report["seed"] = options.seed;
  Json items = Json::array();
  bool ok = true;
  for (const CriterionResult& r : results) {
    const char* status = r.passed ? "pass" : (r.known_deviation ? "known_deviation" : "fail");
    ok = ok && (r.passed || r.known_deviation);
    items.push_back({{"id", r.id}, {"name", r.name}, {"status", status}, {"detail", r.detail}});
    std::cerr << (r.id > 0 ? "criterion " + std::to_string(r.id) : std::string("supplementary")) << ": " << status
              << " (" << format_double(r.seconds) << " s)\n";
  }
  report["results"] = items;
  report["passed"] = ok;
  Output out(c.output);
  out.stream() << report.dump(2) << "\n";
  return ok ? kExitOk : kExitViolation;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedPair:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::InfiniteSupport:
    case ErrorCode::LengthMismatch:
    case ErrorCode::ConditionsViolated:
    case ErrorCode::InvalidOccupancy:
    case ErrorCode::ParameterOrder:
      return kExitInput;
    case ErrorCode::UnboundedProfile:
      return kExitUnknown;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic order between discrete distributions"};
  app.require_subcommand(1);
  Config c;

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("P", c.first, "first distribution (JSON or file)")->required();
    sub->add_option("Q", c.second, "second distribution (JSON or file)")->required();
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--k-cap", c.k_cap, "truncation point for infinite supports");
    sub->add_option("--epsilon", c.epsilon, "tail mass bound for the adaptive truncation")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("--output", c.output, "write to this file instead of stdout"); };

  auto* decide_cmd = app.add_subcommand("decide", "decide the order of P and Q, JSON verdict");
  add_pair(decide_cmd);
  add_oracle(decide_cmd);
  add_output(decide_cmd);

  auto* explain_cmd = app.add_subcommand("explain", "human-readable derivation of the verdict");
  add_pair(explain_cmd);
  add_oracle(explain_cmd);
  add_output(explain_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "cdf scan only, JSON report");
  add_pair(oracle_cmd);
  add_oracle(oracle_cmd);
  add_output(oracle_cmd);

  auto* couple_cmd = app.add_subcommand("couple", "sample a coupling with x1 <= x2, JSON lines");
  add_pair(couple_cmd);
  couple_cmd->add_option("--method", c.method, "coupling construction")
      ->check(CLI::IsMember({"explicit", "levy", "occupancy", "poissonize", "quantile"}))
      ->capture_default_str();
  couple_cmd->add_option("--samples", c.samples, "number of coupled draws")->capture_default_str();
  couple_cmd->add_option("--seed", c.seed, "random seed (default: STOCHORD_SEED or " + std::to_string(kDefaultSeed) + ")");
  add_output(couple_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", c.suite, "suite name")->capture_default_str();
  verify_cmd->add_option("--samples", c.samples, "draws per coupling setting")->capture_default_str();
  verify_cmd->add_option("--seed", c.seed, "random seed");
  add_output(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*decide_cmd) return cmd_decide(c);
    if (*explain_cmd) return cmd_explain(c);
    if (*oracle_cmd) return cmd_oracle(c);
    if (*couple_cmd) return cmd_couple(c);
    return cmd_verify(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
