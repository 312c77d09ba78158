#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

enum class InjectedFault { None, SptComparator };

struct VerifyOptions {
  std::size_t max_n = 8;      // at most kBruteForceMaxJobs
  std::size_t trials = 1000;  // random instances per suite
  std::uint64_t seed = 1;
  InjectedFault fault = InjectedFault::None;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::optional<std::vector<Job>> counterexample;

  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  const SuiteResult* first_failed() const;
};

/// Runs the verification battery: brute-force optimum, full permutation
/// enumeration, contribution audit, processor-sharing closed form, ratio
/// bounds and per-job runtime bounds. Throws SizeError if max_n > 12.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace testlab
