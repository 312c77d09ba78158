#include "testlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>

namespace testlab {

double job_ratio(double u, double t) {
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  return u / t;
}

double Job::ratio() const { return job_ratio(u, t); }
double JobView::ratio() const { return job_ratio(u, t); }

void validate_jobs(std::span<const Job> jobs) {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    if (j.id != i) {
      throw InstanceError("job ids must be 0..n-1 in order; found id " + std::to_string(j.id) +
                          " at position " + std::to_string(i));
    }
    if (!std::isfinite(j.u) || !std::isfinite(j.t) || !std::isfinite(j.p)) {
      throw InstanceError("job " + std::to_string(i) + " has a non-finite field");
    }
    if (j.t < 0.0) throw InstanceError("job " + std::to_string(i) + " has negative test time");
    if (j.p < 0.0 || j.p > j.u) {
      throw InstanceError("job " + std::to_string(i) + " violates 0 <= p <= u");
    }
  }
}

double optimal_runtime(const Job& job) { return std::min(job.u, job.t + job.p); }

double algorithmic_runtime(const Job& job, bool tested) { return tested ? job.t + job.p : job.u; }

double opt_sum_completion(std::span<const Job> jobs) {
  std::vector<double> rho;
  rho.reserve(jobs.size());
  for (const Job& j : jobs) rho.push_back(optimal_runtime(j));
  std::sort(rho.begin(), rho.end(), std::greater<>());
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) total += static_cast<double>(i + 1) * rho[i];
  return total;
}

double opt_makespan(std::span<const Job> jobs) {
  double total = 0.0;
  for (const Job& j : jobs) total += optimal_runtime(j);
  return total;
}

// ---------------------------------------------------------------------------

InstanceOracle::InstanceOracle(std::vector<JobView> views)
    : views_(std::move(views)), decisions_(views_.size()), values_(views_.size(), 0.0) {}

void InstanceOracle::check_id(JobId id) const {
  if (id >= views_.size()) throw ProtocolError("unknown job id " + std::to_string(id));
}

void InstanceOracle::commit(JobId id, bool tested) {
  check_id(id);
  if (decisions_[id]) throw ProtocolError("job " + std::to_string(id) + " committed twice");
  const double p = decide(id, tested);
  if (p < 0.0 || p > views_[id].u) {
    throw ProtocolError("oracle produced p outside [0, u] for job " + std::to_string(id));
  }
  decisions_[id] = tested;
  values_[id] = p;
  ++decided_;
}

double InstanceOracle::reveal(JobId id) {
  check_id(id);
  if (!decisions_[id] || !*decisions_[id]) {
    throw ProtocolError("reveal of job " + std::to_string(id) + " before its test was committed");
  }
  return values_[id];
}

std::optional<bool> InstanceOracle::decision(JobId id) const {
  check_id(id);
  return decisions_[id];
}

std::vector<Job> InstanceOracle::realized_jobs() const {
  std::vector<Job> out;
  out.reserve(views_.size());
  for (const JobView& v : views_) {
    double p = 0.0;
    if (decisions_[v.id]) {
      p = values_[v.id];
    } else if (auto value = undecided_value(v.id)) {
      p = *value;
    } else {
      throw ProtocolError("job " + std::to_string(v.id) + " has no realized processing time");
    }
    out.push_back(Job{v.id, v.u, v.t, p});
  }
  return out;
}

namespace {

std::vector<JobView> views_of(const std::vector<Job>& jobs) {
  validate_jobs(jobs);
  std::vector<JobView> views;
  views.reserve(jobs.size());
  for (const Job& j : jobs) views.push_back(JobView{j.id, j.u, j.t});
  return views;
}

}  // namespace

StaticInstance::StaticInstance(std::vector<Job> jobs) : InstanceOracle(views_of(jobs)), jobs_(std::move(jobs)) {}

double StaticInstance::decide(JobId id, bool /*tested*/) { return jobs_[id].p; }

std::optional<double> StaticInstance::undecided_value(JobId id) const { return jobs_[id].p; }

// ---------------------------------------------------------------------------

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::UntestedRun: return "untested_run";
    case EventKind::Test: return "test";
    case EventKind::TestedRun: return "tested_run";
    case EventKind::SharedSlice: return "shared_slice";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (EventKind k : {EventKind::UntestedRun, EventKind::Test, EventKind::TestedRun, EventKind::SharedSlice}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

double safe_ratio(double alg, double opt) {
  if (opt == 0.0) return alg == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return alg / opt;
}

bool machine_non_idle(const Schedule& events) {
  std::vector<std::pair<double, double>> spans;
  for (const ScheduleEvent& e : events) {
    if (e.end > e.start) spans.emplace_back(e.start, e.end);
  }
  std::sort(spans.begin(), spans.end());
  double reach = 0.0;
  for (const auto& [s, e] : spans) {
    if (s > reach + kTimeTolerance * std::max(1.0, reach)) return false;
    reach = std::max(reach, e);
  }
  return true;
}

Outcome outcome_from_schedule(const Schedule& events, const InstanceOracle& oracle) {
  const std::size_t n = oracle.size();
  const std::vector<Job> jobs = oracle.realized_jobs();

  double horizon = 0.0;
  for (const ScheduleEvent& e : events) horizon = std::max(horizon, std::abs(e.end));
  const double tol = kTimeTolerance * std::max(1.0, horizon);

  // A shared slice may be logged once or once per member; identical
  // (start, end, share set) entries describe the same block of machine time.
  std::vector<const ScheduleEvent*> unique_events;
  {
    std::vector<const ScheduleEvent*> slices;
    for (const ScheduleEvent& e : events) {
      (e.kind == EventKind::SharedSlice ? slices : unique_events).push_back(&e);
    }
    auto key = [](const ScheduleEvent* e) { return std::tie(e->start, e->end, e->share_set); };
    std::sort(slices.begin(), slices.end(), [&](auto* a, auto* b) { return key(a) < key(b); });
    for (std::size_t i = 0; i < slices.size(); ++i) {
      if (i == 0 || key(slices[i]) != key(slices[i - 1])) unique_events.push_back(slices[i]);
    }
  }

  // Every event occupies the whole machine, shared slices included.
  std::vector<const ScheduleEvent*> busy;
  for (const ScheduleEvent* ep : unique_events) {
    const ScheduleEvent& e = *ep;
    if (!(e.start <= e.end) || e.start < -tol) {
      throw MalformedScheduleError("event with start > end or negative start");
    }
    if (e.kind == EventKind::SharedSlice) {
      if (e.share_set.empty()) throw MalformedScheduleError("shared slice with empty share set");
    } else if (e.job >= n) {
      throw MalformedScheduleError("event names unknown job " + std::to_string(e.job));
    }
    if (e.end > e.start) busy.push_back(&e);
  }
  std::sort(busy.begin(), busy.end(), [](const auto* a, const auto* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < busy.size(); ++i) {
    if (busy[i]->start < busy[i - 1]->end - tol) {
      throw MalformedScheduleError("overlapping events at time " + std::to_string(busy[i]->start));
    }
  }

  std::vector<double> work(n, 0.0), test_work(n, 0.0), run_work(n, 0.0);
  std::vector<double> completion(n, 0.0);
  std::vector<bool> seen(n, false), shared(n, false);
  std::vector<double> last_test_end(n, 0.0), first_run_start(n, std::numeric_limits<double>::infinity());
  for (const ScheduleEvent* ep : unique_events) {
    const ScheduleEvent& e = *ep;
    const double d = e.end - e.start;
    if (e.kind == EventKind::SharedSlice) {
      const double share = d / static_cast<double>(e.share_set.size());
      for (JobId id : e.share_set) {
        if (id >= n) throw MalformedScheduleError("share set names unknown job " + std::to_string(id));
        work[id] += share;
        completion[id] = std::max(completion[id], e.end);
        seen[id] = true;
        shared[id] = true;
      }
      continue;
    }
    const auto decided = oracle.decision(e.job);
    if (!decided) throw MalformedScheduleError("job " + std::to_string(e.job) + " scheduled but never committed");
    const bool tested = *decided;
    if ((e.kind == EventKind::UntestedRun) == tested) {
      throw MalformedScheduleError("event kind contradicts test decision of job " + std::to_string(e.job));
    }
    if (e.kind == EventKind::Test) {
      test_work[e.job] += d;
      last_test_end[e.job] = std::max(last_test_end[e.job], e.end);
    }
    if (e.kind == EventKind::TestedRun) {
      run_work[e.job] += d;
      first_run_start[e.job] = std::min(first_run_start[e.job], e.start);
    }
    work[e.job] += d;
    completion[e.job] = std::max(completion[e.job], e.end);
    seen[e.job] = true;
  }

  for (const Job& j : jobs) {
    const auto decided = oracle.decision(j.id);
    if (!seen[j.id] || !decided) {
      throw MalformedScheduleError("job " + std::to_string(j.id) + " never scheduled");
    }
    const double required = algorithmic_runtime(j, *decided);
    if (std::abs(work[j.id] - required) > tol) {
      throw MalformedScheduleError("job " + std::to_string(j.id) + " received work " + std::to_string(work[j.id]) +
                                   ", needs " + std::to_string(required));
    }
    if (*decided && first_run_start[j.id] < last_test_end[j.id] - tol) {
      throw MalformedScheduleError("job " + std::to_string(j.id) + " runs before its test ends");
    }
    if (*decided && !shared[j.id] && std::abs(test_work[j.id] - j.t) > tol) {
      throw MalformedScheduleError("job " + std::to_string(j.id) + " test block has wrong length");
    }
  }

  Outcome out;
  out.completion = std::move(completion);
  for (double c : out.completion) {
    out.sum_completion += c;
    out.makespan = std::max(out.makespan, c);
  }
  out.opt_sum = opt_sum_completion(jobs);
  out.opt_makespan = opt_makespan(jobs);
  out.ratio_sum = safe_ratio(out.sum_completion, out.opt_sum);
  out.ratio_makespan = safe_ratio(out.makespan, out.opt_makespan);
  return out;
}

}  // namespace testlab
