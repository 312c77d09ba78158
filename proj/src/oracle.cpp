#include "testlab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace testlab {
namespace {

void require_size(std::size_t n, std::size_t limit) {
  if (n > limit) {
    throw SizeError("brute force supports at most " + std::to_string(limit) + " jobs, got " + std::to_string(n));
  }
}

double duration(const Job& j, bool test) { return test ? j.t + j.p : j.u; }

double sum_of_completions(std::span<const Job> jobs, const std::vector<bool>& decisions,
                          const std::vector<JobId>& order) {
  double now = 0.0;
  double total = 0.0;
  for (JobId id : order) {
    now += duration(jobs[id], decisions[id]);
    total += now;
  }
  return total;
}

std::vector<bool> decisions_of(std::size_t mask, std::size_t n) {
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ((mask >> i) & 1U) != 0;
  return out;
}

}  // namespace

bool spt_order(double a, JobId ia, double b, JobId ib) { return a < b || (a == b && ia < ib); }

BruteForceResult brute_opt_sum(std::span<const Job> jobs, const DurationOrder& order) {
  const std::size_t n = jobs.size();
  require_size(n, kBruteForceMaxJobs);
  validate_jobs(jobs);

  BruteForceResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  std::vector<JobId> sequence(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const std::vector<bool> decisions = decisions_of(mask, n);
    std::iota(sequence.begin(), sequence.end(), JobId{0});
    std::sort(sequence.begin(), sequence.end(), [&](JobId a, JobId b) {
      return order(duration(jobs[a], decisions[a]), a, duration(jobs[b], decisions[b]), b);
    });
    const double value = sum_of_completions(jobs, decisions, sequence);
    if (value < best.best_value) best = {value, decisions, sequence};
  }
  if (n == 0) best.best_value = 0.0;
  return best;
}

BruteForceResult brute_opt_sum_permutations(std::span<const Job> jobs) {
  const std::size_t n = jobs.size();
  require_size(n, kPermutationMaxJobs);
  validate_jobs(jobs);

  BruteForceResult best;
  best.best_value = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  std::vector<JobId> sequence(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const std::vector<bool> decisions = decisions_of(mask, n);
    std::iota(sequence.begin(), sequence.end(), JobId{0});
    do {
      const double value = sum_of_completions(jobs, decisions, sequence);
      if (value < best.best_value) best = {value, decisions, sequence};
    } while (std::next_permutation(sequence.begin(), sequence.end()));
  }
  return best;
}

double brute_opt_makespan(std::span<const Job> jobs) {
  require_size(jobs.size(), kMakespanBruteForceMaxJobs);
  double total = 0.0;
  for (const Job& j : jobs) total += std::min(duration(j, false), duration(j, true));
  return total;
}

}  // namespace testlab
