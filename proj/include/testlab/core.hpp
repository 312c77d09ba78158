#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace testlab {

inline constexpr double kPhi = 1.6180339887498948482;  // (1 + sqrt 5) / 2
inline constexpr double kTimeTolerance = 1e-9;

using JobId = std::size_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedScheduleError : public Error {
 public:
  using Error::Error;
};

/// Raised when an algorithm breaks the commit/reveal protocol of an oracle.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInstanceError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class InstanceError : public Error {
 public:
  using Error::Error;
};

/// A job with its hidden processing time. Only evaluation code and instance
/// generators see `p`; algorithms work on JobView.
struct Job {
  JobId id = 0;
  double u = 0.0;
  double t = 0.0;
  double p = 0.0;

  /// u / t, or +inf for t == 0 (free tests are always taken).
  double ratio() const;
};

/// The algorithm-facing part of a job.
struct JobView {
  JobId id = 0;
  double u = 0.0;
  double t = 0.0;

  double ratio() const;
};

double job_ratio(double u, double t);

/// Throws InstanceError unless ids are 0..n-1 in order and 0 <= p <= u, t >= 0.
void validate_jobs(std::span<const Job> jobs);

/// rho = min(u, t + p), the time an offline optimum spends on the job.
double optimal_runtime(const Job& job);

/// Sum of completion times of the offline optimum (SPT on rho).
double opt_sum_completion(std::span<const Job> jobs);
/// Makespan of the offline optimum, the plain sum of rho.
double opt_makespan(std::span<const Job> jobs);

/// Online view of an instance. Processing times stay hidden until the
/// algorithm commits to testing a job; commitments are irrevocable.
class InstanceOracle {
 public:
  virtual ~InstanceOracle() = default;

  const std::vector<JobView>& jobs() const { return views_; }
  std::size_t size() const { return views_.size(); }

  /// Records that the algorithm starts running `id` untested (tested=false)
  /// or starts its test (tested=true). A second commit on a job throws.
  void commit(JobId id, bool tested);

  /// Processing time of a job committed as tested. Memoized.
  double reveal(JobId id);

  std::optional<bool> decision(JobId id) const;
  std::size_t decided_count() const { return decided_; }

  /// Full instance with every processing time fixed, for evaluation after a
  /// run. Throws ProtocolError if some job was never committed and the
  /// oracle cannot answer for it.
  std::vector<Job> realized_jobs() const;

 protected:
  explicit InstanceOracle(std::vector<JobView> views);

  /// Fixes p for a job at the moment of its commitment.
  virtual double decide(JobId id, bool tested) = 0;
  /// p for a job that was never committed, if the oracle knows one.
  virtual std::optional<double> undecided_value(JobId id) const = 0;

 private:
  void check_id(JobId id) const;

  std::vector<JobView> views_;
  std::vector<std::optional<bool>> decisions_;
  std::vector<double> values_;
  std::size_t decided_ = 0;
};

/// Oracle over a fixed, fully known instance.
class StaticInstance final : public InstanceOracle {
 public:
  explicit StaticInstance(std::vector<Job> jobs);

  const std::vector<Job>& hidden_jobs() const { return jobs_; }

 protected:
  double decide(JobId id, bool tested) override;
  std::optional<double> undecided_value(JobId id) const override;

 private:
  std::vector<Job> jobs_;
};

enum class EventKind { UntestedRun, Test, TestedRun, SharedSlice };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One timed block of machine use. For SharedSlice events the machine is
/// split evenly across `share_set`; `job` names the lowest-id job whose
/// current phase ends at `end`.
struct ScheduleEvent {
  JobId job = 0;
  EventKind kind = EventKind::UntestedRun;
  double start = 0.0;
  double end = 0.0;
  std::vector<JobId> share_set;

  friend bool operator==(const ScheduleEvent&, const ScheduleEvent&) = default;
};

using Schedule = std::vector<ScheduleEvent>;

struct Outcome {
  std::vector<double> completion;  // indexed by job id
  double sum_completion = 0.0;
  double makespan = 0.0;
  double opt_sum = 0.0;
  double opt_makespan = 0.0;
  double ratio_sum = 1.0;
  double ratio_makespan = 1.0;
};

/// ALG / OPT with the 0/0 = 1 convention.
double safe_ratio(double alg, double opt);

/// Validates the event log against the oracle's commitments and computes
/// completion times and ratios. Throws MalformedScheduleError.
Outcome outcome_from_schedule(const Schedule& events, const InstanceOracle& oracle);

/// True when the machine is busy without gaps from time 0 to the last event.
bool machine_non_idle(const Schedule& events);

/// Time the algorithm spends on the job: t + p if tested, u otherwise.
double algorithmic_runtime(const Job& job, bool tested);

}  // namespace testlab
