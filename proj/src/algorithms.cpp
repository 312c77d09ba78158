#include "testlab/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include "testlab/rng.hpp"

namespace testlab {
namespace {

bool tests_at_threshold(const JobView& job, double alpha) { return job.t == 0.0 || job.u >= alpha * job.t; }

enum class Stage { Untested, TestPending, Tested };

struct Pending {
  double sigma;
  JobId id;
  Stage stage;

  bool operator>(const Pending& other) const { return std::tie(sigma, id) > std::tie(other.sigma, other.id); }
};

// Second phase shared by (alpha, beta)-SORT and Randomized-SORT.
Schedule sort_by_scaling_time(InstanceOracle& oracle, const std::vector<bool>& in_test_set, double beta) {
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
  for (const JobView& j : oracle.jobs()) {
    if (in_test_set[j.id]) {
      queue.push({beta * j.t, j.id, Stage::TestPending});
    } else {
      queue.push({j.u, j.id, Stage::Untested});
    }
  }

  Schedule schedule;
  schedule.reserve(oracle.size() * 2);
  double now = 0.0;
  while (!queue.empty()) {
    const Pending next = queue.top();
    queue.pop();
    const JobView& job = oracle.jobs()[next.id];
    switch (next.stage) {
      case Stage::Untested:
        oracle.commit(job.id, false);
        schedule.push_back({job.id, EventKind::UntestedRun, now, now + job.u, {}});
        now += job.u;
        break;
      case Stage::TestPending: {
        oracle.commit(job.id, true);
        schedule.push_back({job.id, EventKind::Test, now, now + job.t, {}});
        now += job.t;
        const double p = oracle.reveal(job.id);
        queue.push({p, job.id, Stage::Tested});
        break;
      }
      case Stage::Tested: {
        const double p = oracle.reveal(job.id);
        schedule.push_back({job.id, EventKind::TestedRun, now, now + p, {}});
        now += p;
        break;
      }
    }
  }
  return schedule;
}

void require_param(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

Schedule alpha_beta_sort(InstanceOracle& oracle, double alpha, double beta) {
  require_param(alpha >= 1.0, "alpha must be >= 1");
  require_param(beta >= 1.0 && std::isfinite(beta), "beta must be finite and >= 1");
  std::vector<bool> tested(oracle.size());
  for (const JobView& j : oracle.jobs()) tested[j.id] = tests_at_threshold(j, alpha);
  return sort_by_scaling_time(oracle, tested, beta);
}

std::vector<bool> randomized_test_set(const std::vector<JobView>& jobs, const TestProbability& test_probability,
                                      std::uint64_t seed) {
  Rng rng(seed, "randomized-sort");
  std::vector<bool> tested(jobs.size());
  for (const JobView& j : jobs) {
    const double draw = rng.uniform();
    const double r = j.ratio();
    double q = 0.0;
    if (j.t == 0.0) {
      q = 1.0;
    } else if (r >= 1.0) {
      q = test_probability(r);
      if (!(q >= 0.0 && q <= 1.0)) {
        throw ParameterError("test probability " + std::to_string(q) + " outside [0, 1] at r = " + std::to_string(r));
      }
    }
    tested[j.id] = draw < q;
  }
  return tested;
}

Schedule randomized_sort(InstanceOracle& oracle, double beta, const TestProbability& test_probability,
                         std::uint64_t seed) {
  require_param(beta >= 1.0 && std::isfinite(beta), "beta must be finite and >= 1");
  return sort_by_scaling_time(oracle, randomized_test_set(oracle.jobs(), test_probability, seed), beta);
}

Schedule force_testing(InstanceOracle& oracle) {
  const auto& jobs = oracle.jobs();
  for (const JobView& j : jobs) {
    if (j.t != 1.0) throw UnsupportedInstanceError("force testing needs unit test times; job " + std::to_string(j.id));
  }
  std::vector<JobId> untested, tested;
  for (const JobView& j : jobs) (j.u < 2.0 ? untested : tested).push_back(j.id);
  std::stable_sort(untested.begin(), untested.end(), [&](JobId a, JobId b) { return jobs[a].u < jobs[b].u; });

  Schedule schedule;
  double now = 0.0;
  for (JobId id : untested) {
    oracle.commit(id, false);
    schedule.push_back({id, EventKind::UntestedRun, now, now + jobs[id].u, {}});
    now += jobs[id].u;
  }
  std::vector<double> revealed(jobs.size(), 0.0);
  for (JobId id : tested) {
    oracle.commit(id, true);
    schedule.push_back({id, EventKind::Test, now, now + 1.0, {}});
    now += 1.0;
    revealed[id] = oracle.reveal(id);
  }
  std::stable_sort(tested.begin(), tested.end(), [&](JobId a, JobId b) { return revealed[a] < revealed[b]; });
  for (JobId id : tested) {
    schedule.push_back({id, EventKind::TestedRun, now, now + revealed[id], {}});
    now += revealed[id];
  }
  return schedule;
}

Schedule golden_round_robin(InstanceOracle& oracle) {
  const auto& jobs = oracle.jobs();
  const std::size_t n = jobs.size();

  // All active jobs have received the same amount of service (`level`), so
  // phase boundaries are expressed as service levels.
  struct Boundary {
    double level;
    JobId id;
    bool operator>(const Boundary& other) const { return std::tie(level, id) > std::tie(other.level, other.id); }
  };
  std::priority_queue<Boundary, std::vector<Boundary>, std::greater<>> boundaries;
  std::vector<bool> in_test(n, false);
  std::set<JobId> active;
  for (const JobView& j : jobs) {
    const bool test = tests_at_threshold(j, kPhi);
    oracle.commit(j.id, test);
    in_test[j.id] = test;
    boundaries.push({test ? j.t : j.u, j.id});
    active.insert(j.id);
  }

  Schedule schedule;
  std::vector<bool> sliced(n, false);
  double level = 0.0;
  double now = 0.0;
  while (!boundaries.empty()) {
    const Boundary top = boundaries.top();
    if (top.level > level) {
      const double end = now + (top.level - level) * static_cast<double>(active.size());
      ScheduleEvent slice{top.id, EventKind::SharedSlice, now, end, {active.begin(), active.end()}};
      for (JobId id : slice.share_set) sliced[id] = true;
      schedule.push_back(std::move(slice));
      now = end;
      level = top.level;
    }
    std::vector<JobId> instant;
    while (!boundaries.empty() && boundaries.top().level == level) {
      const JobId id = boundaries.top().id;
      boundaries.pop();
      if (in_test[id]) {
        in_test[id] = false;
        boundaries.push({jobs[id].t + oracle.reveal(id), id});
        continue;
      }
      active.erase(id);
      if (!sliced[id]) instant.push_back(id);
    }
    if (!instant.empty()) {
      schedule.push_back({instant.front(), EventKind::SharedSlice, now, now, instant});
    }
  }
  return schedule;
}

std::vector<double> grr_closed_form(const std::vector<double>& works) {
  const std::size_t n = works.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return works[a] < works[b]; });
  std::vector<double> completion(n, 0.0);
  double finished = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = works[order[i]];
    completion[order[i]] = finished + static_cast<double>(n - i) * w;
    finished += w;
  }
  return completion;
}

namespace {

Schedule run_each_in_id_order(InstanceOracle& oracle, const std::vector<bool>& tested) {
  Schedule schedule;
  double now = 0.0;
  for (const JobView& j : oracle.jobs()) {
    oracle.commit(j.id, tested[j.id]);
    if (!tested[j.id]) {
      schedule.push_back({j.id, EventKind::UntestedRun, now, now + j.u, {}});
      now += j.u;
      continue;
    }
    schedule.push_back({j.id, EventKind::Test, now, now + j.t, {}});
    now += j.t;
    const double p = oracle.reveal(j.id);
    schedule.push_back({j.id, EventKind::TestedRun, now, now + p, {}});
    now += p;
  }
  return schedule;
}

}  // namespace

Schedule makespan_det(InstanceOracle& oracle) {
  std::vector<bool> tested(oracle.size());
  for (const JobView& j : oracle.jobs()) tested[j.id] = tests_at_threshold(j, kPhi);
  return run_each_in_id_order(oracle, tested);
}

double makespan_test_probability(double r) {
  if (std::isinf(r)) return 1.0;
  if (r <= 1.0) return 0.0;
  return 1.0 - 1.0 / (r * r - r + 1.0);
}

Schedule makespan_rand(InstanceOracle& oracle, std::uint64_t seed) {
  Rng rng(seed, "makespan-rand");
  std::vector<bool> tested(oracle.size());
  for (const JobView& j : oracle.jobs()) {
    const double draw = rng.uniform();
    tested[j.id] = draw < makespan_test_probability(j.ratio());
  }
  return run_each_in_id_order(oracle, tested);
}

}  // namespace testlab
