#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

/// Probability of testing a job as a function of r = u / t.
using TestProbability = std::function<double(double)>;

/// Deterministic (alpha, beta)-SORT. Jobs with u >= alpha t are tested;
/// afterwards the job with the smallest scaling time runs next, where the
/// scaling time is u (untested), beta t (test pending) or p (tested).
Schedule alpha_beta_sort(InstanceOracle& oracle, double alpha, double beta);

/// Randomized-SORT: job j joins the test set with probability
/// test_probability(r_j), then the same second phase as alpha_beta_sort.
/// Jobs with t == 0 are always tested and jobs with r < 1 never are.
Schedule randomized_sort(InstanceOracle& oracle, double beta, const TestProbability& test_probability,
                         std::uint64_t seed);

/// The test-set membership drawn by randomized_sort for a given seed.
std::vector<bool> randomized_test_set(const std::vector<JobView>& jobs, const TestProbability& test_probability,
                                      std::uint64_t seed);

/// Unit test times only: u < 2 jobs run untested by increasing u, every
/// other job is tested, then tested jobs run in SPT order.
Schedule force_testing(InstanceOracle& oracle);

/// Preemptive Golden Round Robin in the processor-sharing limit: tests iff
/// u >= phi t, then every unfinished job receives rate 1/k.
Schedule golden_round_robin(InstanceOracle& oracle);

/// Completion times of processor sharing on fixed total works; the input
/// order is the job id.
std::vector<double> grr_closed_form(const std::vector<double>& works);

/// Makespan algorithm testing iff r >= phi, jobs in id order.
Schedule makespan_det(InstanceOracle& oracle);

/// Makespan algorithm testing with probability 1 - 1/(r^2 - r + 1).
Schedule makespan_rand(InstanceOracle& oracle, std::uint64_t seed);

double makespan_test_probability(double r);

}  // namespace testlab
