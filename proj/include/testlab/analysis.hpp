#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

/// Raised when the analytic test probability is undefined (non-positive
/// denominator); the value is reported, never clamped.
class AnalysisDomainError : public Error {
 public:
  using Error::Error;
};

/// Competitive-ratio bound of (alpha, beta)-SORT:
/// max(a, 1 + 1/a) + max((1 + 1/b) a, 1 + 1/a, 1 + b).
double f_alpha_beta(double alpha, double beta);

struct GridMinimum {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
};

/// Minimum of f_alpha_beta over the grid [lo, hi]^2. Ties keep the first
/// point in (alpha, beta) lexicographic order.
GridMinimum minimize_f_alpha_beta(double lo = 1.0, double hi = 3.0, double step = 1e-3);

struct LinearBranch {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double p) const { return slope * p + intercept; }
};

/// The two per-job bounds on lambda_j / rho_j of Randomized-SORT as linear
/// functions of the test probability p, for rho = u (upper) and
/// rho = t + p (tested).
struct LambdaPair {
  double beta = 1.0;
  double r = 1.0;
  LinearBranch upper;
  LinearBranch tested;

  double at(double p) const;
};

LambdaPair lambda_branches(double beta, double r);

/// Test probability equalizing both branches; may exceed 1.
double test_probability_uncapped(double r, double beta);
/// min(test_probability_uncapped, 1).
double phat(double r, double beta);

/// Per-job bound max(upper, tested) evaluated at p = phat(r, beta).
double randomized_job_bound(double r, double beta);

struct RatioSearch {
  double r_max = 100.0;
  double r_step = 1e-4;
  double tolerance = 1e-8;
};

struct WorstRatio {
  double ratio = 0.0;
  double r_star = 1.0;
};

/// Maximum of randomized_job_bound over r in [1, r_max]: dense grid, then
/// golden-section refinement around the best grid point.
WorstRatio worst_ratio(double beta, const RatioSearch& search = {});

/// Smallest r > 1 with uncapped probability >= 1 (bisection to 1e-12).
/// Returns +inf if the cap never binds on [1, r_max].
double cap_threshold(double beta, double r_max = 100.0);

/// Maximum of the per-job bound with p = 1 over r in [r_hat, r_max].
double capped_region_max(double beta, double r_hat, const RatioSearch& search = {});

struct MinMaxResult {
  double beta_star = 1.0;
  double worst_ratio = 0.0;
  double r_star = 1.0;
  double r_hat = 0.0;
  double capped_region_max = 0.0;
};

struct BetaSearch {
  double lo = 1.0;
  double hi = 3.0;
  double grid_step = 1e-3;
  double tolerance = 1e-6;
  /// r-grid used while scanning the beta grid; the refined optimum and the
  /// reported values always use the full-resolution RatioSearch.
  double scan_r_step = 1e-3;
  RatioSearch ratio{};
};

MinMaxResult optimize_beta(const BetaSearch& search = {});

/// Constants used by Randomized-SORT in experiments.
inline constexpr double kRandomizedBeta = 1.2574;
inline constexpr double kRandomizedRatio = 3.3794;

// ---------------------------------------------------------------------------
// Contribution audit

/// Branch of the contribution case analysis. Untested j has cases 1-5,
/// tested j has cases 1-9.
struct ContributionCase {
  bool j_tested = false;
  int number = 0;

  std::string label() const;
};

/// Case of the pair (k, j) from the test decisions, u, t and revealed p.
ContributionCase classify_contribution(const Job& k, bool k_tested, const Job& j, bool j_tested, double beta);

struct AuditReport {
  std::size_t pairs = 0;
  std::array<std::size_t, 5> untested_cases{};
  std::array<std::size_t, 9> tested_cases{};
  std::vector<std::string> failures;
  double max_bound_usage = 0.0;  // max c(k,j) / (global bound), 0 when rho_j = 0

  bool passed() const { return failures.empty(); }
  std::size_t cases_covered() const;
  void merge(const AuditReport& other);
};

/// Measures every contribution c(k, j) in a non-preemptive schedule and
/// checks that they sum to C_j and obey the per-case and global bounds.
AuditReport contribution_audit(const Schedule& schedule, const InstanceOracle& oracle, double alpha, double beta);

// ---------------------------------------------------------------------------
// Monte Carlo

struct Statistics {
  std::size_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double ci_lo = 0.0;   // 95% normal approximation
  double ci_hi = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool degenerate() const { return ci_hi == ci_lo; }
};

Statistics summarize(const std::vector<double>& samples);

/// Runs `trial(seed)` for independent seeds derived from (base_seed, index).
Statistics monte_carlo(const std::function<double(std::uint64_t)>& trial, std::size_t trials, std::uint64_t base_seed);

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index);

/// Expected makespan ratio of makespan_rand on one job with known p.
double expected_makespan_ratio(const Job& job);

}  // namespace testlab
