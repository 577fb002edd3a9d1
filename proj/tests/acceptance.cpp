#include <cstdio>
#include <cstdlib>
#include <string>

#include "stochord/verify.hpp"

int main(int argc, char** argv) {
  stochord::VerifyOptions options;
  if (const char* env = std::getenv("STOCHORD_SEED")) options.seed = std::stoull(env);
  int first = 1;
  int last = 10;
  if (argc > 1) first = last = std::atoi(argv[1]);
  bool ok = true;
  for (int id = first; id <= last; ++id) {
    const stochord::CriterionResult r = stochord::run_criterion(id, options);
    const char* status = r.passed ? "PASS" : (r.known_deviation ? "FAIL (documented deviation)" : "FAIL");
    std::printf("criterion %2d  %-28s %-28s %7.2fs  %s\n", r.id, r.name.c_str(), status, r.seconds, r.detail.c_str());
    std::fflush(stdout);
    ok = ok && (r.passed || r.known_deviation);
  }
  const stochord::CriterionResult v = stochord::check_counterexample_verdicts();
  std::printf("supplementary %-28s %-28s %7.2fs  %s\n", v.name.c_str(), v.passed ? "PASS" : "FAIL", v.seconds,
              v.detail.c_str());
  ok = ok && v.passed;
  return ok ? 0 : 1;
}
