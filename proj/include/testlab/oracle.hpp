#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

class SizeError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kBruteForceMaxJobs = 12;
inline constexpr std::size_t kPermutationMaxJobs = 8;
inline constexpr std::size_t kMakespanBruteForceMaxJobs = 20;

struct BruteForceResult {
  double best_value = 0.0;
  std::vector<bool> best_decisions;  // true = test, indexed by job id
  std::vector<JobId> best_order;
};

/// Orders realized durations for the single-machine sum objective. The
/// default is SPT (ascending duration, then id); verification can swap in
/// a faulty comparator.
using DurationOrder = std::function<bool(double, JobId, double, JobId)>;

bool spt_order(double a, JobId ia, double b, JobId ib);

/// Offline optimum by enumerating all 2^n test decisions, each sequenced by
/// `order`. Throws SizeError for n > 12.
BruteForceResult brute_opt_sum(std::span<const Job> jobs, const DurationOrder& order = spt_order);

/// Enumerates every test decision and every job order. n <= 8.
BruteForceResult brute_opt_sum_permutations(std::span<const Job> jobs);

/// Sum of per-job minima, chosen independently. n <= 20.
double brute_opt_makespan(std::span<const Job> jobs);

}  // namespace testlab
