#include <doctest.h>

#include <cmath>

#include "testlab/adversaries.hpp"
#include "testlab/oracle.hpp"

using namespace testlab;

TEST_CASE("brute_opt_sum examples") {
  const std::vector<Job> tested{{0, 2, 1, 0}};
  const BruteForceResult a = brute_opt_sum(tested);
  CHECK(a.best_value == 1.0);
  CHECK(a.best_decisions == std::vector<bool>{true});

  const std::vector<Job> untested{{0, 1, 1, 1}};
  const BruteForceResult b = brute_opt_sum(untested);
  CHECK(b.best_value == 1.0);
  CHECK(b.best_decisions == std::vector<bool>{false});

  CHECK(brute_opt_sum(std::vector<Job>{}).best_value == 0.0);
}

TEST_CASE("brute force size limits") {
  const auto big = random_instance(13, 5.0, 1, RandomProfile::Uniform);
  CHECK_THROWS_AS(brute_opt_sum(big), SizeError);
  CHECK_NOTHROW(brute_opt_sum(std::span<const Job>(big).first(12)));
  CHECK_THROWS_AS(brute_opt_sum_permutations(std::span<const Job>(big).first(9)), SizeError);
  const auto huge = random_instance(21, 5.0, 1, RandomProfile::Uniform);
  CHECK_THROWS_AS(brute_opt_makespan(huge), SizeError);
}

TEST_CASE("enumeration agrees with the sorted closed form") {
  const RandomProfile profiles[] = {RandomProfile::Uniform, RandomProfile::HeavyRatio, RandomProfile::NearThreshold};
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    const auto jobs = random_instance(1 + seed % 8, 10.0, seed, profiles[seed % 3]);
    const BruteForceResult brute = brute_opt_sum(jobs);
    const double closed = opt_sum_completion(jobs);
    CHECK(std::abs(brute.best_value - closed) <= 1e-9 * std::max(1.0, closed));
    for (const Job& j : jobs) {
      const double tested = j.t + j.p;
      if (tested < j.u) CHECK(brute.best_decisions[j.id]);
      if (tested > j.u) CHECK_FALSE(brute.best_decisions[j.id]);
    }
    if (jobs.size() <= 5) {
      const BruteForceResult perm = brute_opt_sum_permutations(jobs);
      CHECK(std::abs(perm.best_value - closed) <= 1e-9 * std::max(1.0, closed));
      CHECK(perm.best_order.size() == jobs.size());
    }
    CHECK(brute_opt_makespan(jobs) == doctest::Approx(opt_makespan(jobs)));
  }
}

TEST_CASE("faulty order is detectable") {
  const auto longest_first = [](double a, JobId ia, double b, JobId ib) { return spt_order(b, ib, a, ia); };
  const std::vector<Job> jobs{{0, 1, 5, 0}, {1, 3, 5, 0}};
  CHECK(brute_opt_sum(jobs, longest_first).best_value > opt_sum_completion(jobs));
}

TEST_CASE("brute_opt_makespan examples") {
  CHECK(brute_opt_makespan(std::vector<Job>{{0, 2, 1, 0}, {1, 1, 1, 1}}) == 2.0);
  CHECK(brute_opt_makespan(std::vector<Job>{}) == 0.0);
  for (std::size_t n : {1u, 4u, 20u}) {
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i) jobs.push_back({i, 1, 1, 1});
    CHECK(brute_opt_makespan(jobs) == static_cast<double>(n));
  }
}
