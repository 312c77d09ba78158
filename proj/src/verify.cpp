#include "testlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "testlab/adversaries.hpp"
#include "testlab/algorithms.hpp"
#include "testlab/analysis.hpp"
#include "testlab/oracle.hpp"
#include "testlab/rng.hpp"

namespace testlab {

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

const SuiteResult* VerifyReport::first_failed() const {
  for (const SuiteResult& s : suites) {
    if (!s.passed()) return &s;
  }
  return nullptr;
}

namespace {

constexpr RandomProfile kProfiles[] = {RandomProfile::Uniform, RandomProfile::HeavyRatio,
                                       RandomProfile::NearThreshold};

std::vector<Job> battery_instance(Rng& rng, std::size_t max_n, std::size_t index) {
  const std::size_t n = 1 + rng.index(max_n);
  return random_instance(n, 10.0, rng.next(), kProfiles[index % 3]);
}

bool close(double a, double b) { return std::abs(a - b) <= kTimeTolerance * std::max({1.0, std::abs(a), std::abs(b)}); }

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::vector<Job>& instance, const std::string& what) {
    ++result_.checks;
    if (ok) return;
    if (result_.failures++ == 0) {
      result_.first_failure = what;
      result_.counterexample = instance;
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string describe(const char* what, double got, double want) {
  std::ostringstream msg;
  msg.precision(12);
  msg << what << ": got " << got << ", expected " << want;
  return msg.str();
}

SuiteResult oracle_suite(const VerifyOptions& options) {
  Suite suite("oracle-equivalence");
  Rng rng(options.seed, "verify/oracle");
  const std::size_t max_n = std::min<std::size_t>(options.max_n, 8);
  DurationOrder order = spt_order;
  if (options.fault == InjectedFault::SptComparator) {
    order = [](double a, JobId ia, double b, JobId ib) { return spt_order(b, ib, a, ia); };
  }
  for (std::size_t i = 0; i < options.trials; ++i) {
    const auto jobs = battery_instance(rng, max_n, i);
    const BruteForceResult brute = brute_opt_sum(jobs, order);
    const double closed = opt_sum_completion(jobs);
    suite.check(close(brute.best_value, closed), jobs, describe("brute force vs closed-form optimum", brute.best_value, closed));
    for (const Job& j : jobs) {
      const bool rule = j.t + j.p <= j.u;
      const bool tie = j.t + j.p == j.u;
      suite.check(tie || brute.best_decisions[j.id] == rule, jobs, "test rule disagrees with brute force decision");
    }
  }
  return suite.take();
}

SuiteResult permutation_suite(const VerifyOptions& options) {
  Suite suite("full-permutation");
  Rng rng(options.seed, "verify/permutation");
  const std::size_t max_n = std::min<std::size_t>(options.max_n, 5);
  const std::size_t trials = std::max<std::size_t>(1, options.trials / 10);
  for (std::size_t i = 0; i < trials; ++i) {
    const auto jobs = battery_instance(rng, max_n, i);
    const double full = brute_opt_sum_permutations(jobs).best_value;
    const double closed = opt_sum_completion(jobs);
    suite.check(close(full, closed), jobs, describe("permutation enumeration vs closed-form optimum", full, closed));
  }
  return suite.take();
}

SuiteResult audit_suite(const VerifyOptions& options) {
  Suite suite("contribution-audit");
  Rng rng(options.seed, "verify/audit");
  AuditReport total;
  for (std::size_t i = 0; i < options.trials; ++i) {
    const auto jobs = battery_instance(rng, options.max_n, i);
    StaticInstance oracle(jobs);
    const Schedule schedule = alpha_beta_sort(oracle, 1.0, 1.0);
    const AuditReport report = contribution_audit(schedule, oracle, 1.0, 1.0);
    suite.check(report.passed(), jobs, report.passed() ? "" : report.failures.front());
    total.merge(report);
  }
  return suite.take();
}

SuiteResult processor_sharing_suite(const VerifyOptions& options) {
  Suite suite("processor-sharing");
  Rng rng(options.seed, "verify/ps");
  for (std::size_t i = 0; i < options.trials; ++i) {
    const auto jobs = battery_instance(rng, options.max_n, i);
    StaticInstance oracle(jobs);
    const Outcome outcome = outcome_from_schedule(golden_round_robin(oracle), oracle);
    std::vector<double> works;
    for (const Job& j : jobs) works.push_back(algorithmic_runtime(j, *oracle.decision(j.id)));
    const auto closed = grr_closed_form(works);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      suite.check(close(outcome.completion[k], closed[k]), jobs,
                  describe("simulated vs closed-form completion", outcome.completion[k], closed[k]));
    }
  }
  return suite.take();
}

SuiteResult ratio_suite(const VerifyOptions& options) {
  Suite suite("ratio-bounds");
  Rng rng(options.seed, "verify/ratio");
  const double slack = 1e-9;
  for (std::size_t i = 0; i < options.trials; ++i) {
    const auto jobs = battery_instance(rng, options.max_n, i);
    {
      StaticInstance oracle(jobs);
      const Outcome o = outcome_from_schedule(alpha_beta_sort(oracle, 1.0, 1.0), oracle);
      suite.check(o.ratio_sum <= 4.0 + slack && o.ratio_sum >= 1.0 - slack, jobs, describe("(1,1)-SORT ratio", o.ratio_sum, 4.0));
    }
    {
      StaticInstance oracle(jobs);
      const Outcome o = outcome_from_schedule(golden_round_robin(oracle), oracle);
      suite.check(o.ratio_sum <= 2.0 * kPhi + slack && o.ratio_sum >= 1.0 - slack, jobs,
                  describe("Golden Round Robin ratio", o.ratio_sum, 2.0 * kPhi));
    }
    {
      StaticInstance oracle(jobs);
      const Outcome o = outcome_from_schedule(makespan_det(oracle), oracle);
      suite.check(o.ratio_makespan <= kPhi + slack && o.ratio_makespan >= 1.0 - slack, jobs,
                  describe("makespan ratio", o.ratio_makespan, kPhi));
    }
    const auto unit = random_unit_instance(1 + rng.index(options.max_n), 6.0, rng.next());
    StaticInstance oracle(unit);
    const Outcome o = outcome_from_schedule(force_testing(oracle), oracle);
    suite.check(o.ratio_sum <= 2.0 + slack && o.ratio_sum >= 1.0 - slack, unit, describe("force testing ratio", o.ratio_sum, 2.0));
  }
  return suite.take();
}

SuiteResult runtime_suite(const VerifyOptions& options) {
  Suite suite("runtime-bounds");
  Rng rng(options.seed, "verify/runtime");
  const double slack = 1e-9;
  for (std::size_t i = 0; i < options.trials; ++i) {
    const auto jobs = battery_instance(rng, options.max_n, i);
    const double alpha = 1.0 + 2.0 * rng.uniform();
    StaticInstance oracle(jobs);
    alpha_beta_sort(oracle, alpha, 1.0 + rng.uniform());
    for (const Job& j : jobs) {
      const double rho = optimal_runtime(j);
      const double tol = slack * std::max(1.0, rho);
      if (*oracle.decision(j.id)) {
        suite.check(j.t <= rho + tol && j.p <= rho + tol, jobs, "tested job with t or p above rho");
        suite.check(j.t + j.p <= (1.0 + 1.0 / alpha) * rho + tol, jobs, "tested job runtime above (1 + 1/alpha) rho");
      } else {
        suite.check(j.u <= alpha * rho + tol, jobs, "untested job runtime above alpha rho");
      }
    }
  }
  return suite.take();
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.max_n > kBruteForceMaxJobs) {
    throw SizeError("verify supports max_n <= " + std::to_string(kBruteForceMaxJobs));
  }
  if (options.max_n == 0 || options.trials == 0) throw ParameterError("verify needs max_n >= 1 and trials >= 1");
  VerifyReport report;
  report.suites.push_back(oracle_suite(options));
  report.suites.push_back(permutation_suite(options));
  report.suites.push_back(audit_suite(options));
  report.suites.push_back(processor_sharing_suite(options));
  report.suites.push_back(ratio_suite(options));
  report.suites.push_back(runtime_suite(options));
  return report;
}

}  // namespace testlab
