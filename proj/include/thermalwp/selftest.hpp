#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace thermalwp {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values at full precision; doubles as the determinism witness
};

/// Runs verification criteria 1-9: kernel-split identity, width-diffusion
/// residual, packet uncertainties, argon length scales, partition functions,
/// state norms, the thermal correlation triangle (closed form / eigenstate
/// sum / Monte Carlo), the spectral free-propagation reference, and exchange
/// structure. Deterministic for a fixed seed, for any worker count.
std::vector<CriterionResult> run_criteria(std::uint64_t seed, int n_threads);

/// One line per criterion: "criterion N PASS|FAIL name: detail".
std::string format_report(const std::vector<CriterionResult>& results);

/// Full suite: runs criteria 1-9 with n_threads workers, re-runs them with a
/// different worker count, and byte-compares the two formatted reports as
/// criterion 10. Writes the report (all ten lines) to `out`; the output is
/// identical for every n_threads. Returns 0 iff every criterion passed.
int run_selftest(std::uint64_t seed, int n_threads, std::ostream& out);

}  // namespace thermalwp
