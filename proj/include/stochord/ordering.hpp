#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stochord/distribution.hpp"
#include "stochord/likelihood.hpp"
#include "stochord/oracle.hpp"

namespace stochord {

/// Family pairs with closed-form necessary and sufficient tail conditions
/// for P <=st Q.
enum class ClosedFormCase {
  BinomialBinomial,
  NegBinomialNegBinomial,
  HypergeometricHypergeometric,
  HypergeometricBinomial,
  BinomialHypergeometric,
  BinomialPoisson,
  PoissonNegBinomial,
};

std::string_view to_string(ClosedFormCase c);

/// One evaluated inequality, e.g. "(1-p1)^n1 >= (1-p2)^n2".
struct Condition {
  std::string side;  // "left", "right" or "degenerate"
  std::string expression;
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

struct ClosedFormResult {
  ClosedFormCase which;
  bool le_st = false;
  std::vector<Condition> conditions;
  std::vector<std::string> failed() const;
};

/// Tail-condition test for P <=st Q. Returns nullopt when the pair matches
/// none of the closed-form cases.
std::optional<ClosedFormResult> decide_closed_form(const Distribution& p, const Distribution& q);
/// Same, reading point masses from cached tables.
std::optional<ClosedFormResult> decide_closed_form(MassTable& p, MassTable& q);

struct ClosedFormCertificate {
  ClosedFormResult result;
  bool reversed = false;  // the conditions were evaluated for (Q, P)
};

struct HmlrVerdictCertificate {
  HmlrCertificate hmlr;
  bool reversed = false;
};

struct OracleExactCertificate {};

struct OracleTruncatedCertificate {
  long k_cap = 0;
  double tail_bound = 0.0;
  bool tail_certified = false;
};

enum class BcCriterion { SuccessProducts, FailureProducts, MaZeroMass, MaFullMass };
std::string_view to_string(BcCriterion c);

struct BernoulliConvolutionCertificate {
  BcCriterion criterion;
  bool reversed = false;
};

struct IdenticalCertificate {};

using Certificate = std::variant<ClosedFormCertificate, HmlrVerdictCertificate, OracleExactCertificate,
                                 OracleTruncatedCertificate, BernoulliConvolutionCertificate,
                                 IdenticalCertificate>;

std::string_view certificate_kind(const Certificate& c);

struct OrderingVerdict {
  Relation relation = Relation::Unknown;
  Certificate certificate = OracleExactCertificate{};
  std::optional<Witnesses> witnesses;
  std::vector<long> crossings;
  std::string diagnostic;
};

struct DecidePolicy {
  OraclePolicy oracle;
  /// Skip the closed-form, Bernoulli-convolution and likelihood stages.
  bool oracle_only = false;
};

/// Identical specs, closed-form cases in both directions, Bernoulli
/// convolution criteria, likelihood-ratio class membership in both
/// directions, then the oracle.
OrderingVerdict decide(const Distribution& p, const Distribution& q, const DecidePolicy& policy = {});

struct BcSufficiency {
  bool success_products = false;  // prod_{j<=k} p_j <= prod_{j<=k} q_j for all k
  bool failure_products = false;  // prod_{j>=k} (1-p_j) >= prod_{j>=k} (1-q_j) for all k
  bool any() const { return success_products || failure_products; }
};

/// Sufficient conditions for BC_p <=st BC_q. Shorter vectors are padded
/// with zeros.
BcSufficiency bc_sufficient(std::span<const Scalar> p, std::span<const Scalar> q);

enum class MaDirection {
  ConvolutionBelowBinomial,  // BC_q <=st b_{n,p}
  BinomialBelowConvolution,  // b_{n,p} <=st BC_q
};

/// Characterization of the order between BC_q and b_{n,p} by one mass
/// comparison. q must have length n and p must lie in (0,1).
bool ma_criterion(std::span<const Scalar> q, long n, const Scalar& p, MaDirection direction);

}  // namespace stochord
