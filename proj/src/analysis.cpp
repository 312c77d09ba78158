#include "testlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "testlab/algorithms.hpp"
#include "testlab/golden.hpp"
#include "testlab/rng.hpp"

namespace testlab {

double f_alpha_beta(double alpha, double beta) {
  const double runtime_factor = std::max(alpha, 1.0 + 1.0 / alpha);
  const double contribution_factor = std::max({(1.0 + 1.0 / beta) * alpha, 1.0 + 1.0 / alpha, 1.0 + beta});
  return runtime_factor + contribution_factor;
}

GridMinimum minimize_f_alpha_beta(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo || lo < 1.0) throw ParameterError("bad (alpha, beta) grid");
  const auto points = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  GridMinimum best{lo, lo, f_alpha_beta(lo, lo)};
  for (std::size_t i = 0; i < points; ++i) {
    const double alpha = lo + static_cast<double>(i) * step;
    for (std::size_t k = 0; k < points; ++k) {
      const double beta = lo + static_cast<double>(k) * step;
      const double value = f_alpha_beta(alpha, beta);
      if (value < best.value) best = {alpha, beta, value};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

void require_domain(double r, double beta) {
  if (!(r >= 1.0) || !(beta >= 1.0) || !std::isfinite(r) || !std::isfinite(beta)) {
    throw ParameterError("randomized analysis needs finite r >= 1 and beta >= 1");
  }
}

double contribution_max(double beta, double r) {
  return std::max({(1.0 + beta) / r, 1.0 + 1.0 / beta, 1.0 + 1.0 / r});
}

}  // namespace

double LambdaPair::at(double p) const { return std::max(upper(p), tested(p)); }

LambdaPair lambda_branches(double beta, double r) {
  require_domain(r, beta);
  LambdaPair pair;
  pair.beta = beta;
  pair.r = r;
  pair.upper = {1.0 / r - 1.0 - 1.0 / beta + contribution_max(beta, r), 2.0 + 1.0 / beta};
  pair.tested = {2.0 + beta - (2.0 + 1.0 / beta) * r, (2.0 + 1.0 / beta) * r};
  return pair;
}

double test_probability_uncapped(double r, double beta) {
  require_domain(r, beta);
  const double numerator = r * r + 2.0 * beta * r * r - r - 2.0 * beta * r;
  const double denominator = r * r + 2.0 * beta * r * r - r - 3.0 * beta * r - beta * beta * r + beta +
                             beta * r * contribution_max(beta, r);
  if (!(denominator > 0.0)) {
    std::ostringstream msg;
    msg << "test probability undefined at r = " << r << ", beta = " << beta << " (denominator " << denominator << ")";
    throw AnalysisDomainError(msg.str());
  }
  return numerator / denominator;
}

double phat(double r, double beta) { return std::min(test_probability_uncapped(r, beta), 1.0); }

double randomized_job_bound(double r, double beta) { return lambda_branches(beta, r).at(phat(r, beta)); }

namespace {

template <typename F>
WorstRatio grid_then_refine(F&& f, double lo, double hi, const RatioSearch& search) {
  const auto points = static_cast<std::size_t>(std::floor((hi - lo) / search.r_step)) + 1;
  WorstRatio best{f(lo), lo};
  for (std::size_t i = 1; i < points; ++i) {
    const double r = lo + static_cast<double>(i) * search.r_step;
    const double value = f(r);
    if (value > best.ratio) best = {value, r};
  }
  const double a = std::max(lo, best.r_star - search.r_step);
  const double b = std::min(hi, best.r_star + search.r_step);
  if (b > a) {
    const auto [r, value] = golden_section_maximize(f, a, b, search.tolerance);
    if (value > best.ratio) best = {value, r};
  }
  return best;
}

}  // namespace

WorstRatio worst_ratio(double beta, const RatioSearch& search) {
  return grid_then_refine([beta](double r) { return randomized_job_bound(r, beta); }, 1.0, search.r_max, search);
}

double cap_threshold(double beta, double r_max) {
  constexpr double kScanStep = 1e-3;
  double previous = 1.0;
  for (double r = 1.0; r <= r_max; r = std::min(r_max, r + kScanStep)) {
    if (test_probability_uncapped(r, beta) >= 1.0) {
      double lo = previous;
      double hi = r;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (test_probability_uncapped(mid, beta) >= 1.0 ? hi : lo) = mid;
      }
      return hi;
    }
    previous = r;
    if (r == r_max) break;
  }
  return std::numeric_limits<double>::infinity();
}

double capped_region_max(double beta, double r_hat, const RatioSearch& search) {
  if (!(r_hat < search.r_max)) return 0.0;
  return grid_then_refine([beta](double r) { return lambda_branches(beta, r).at(1.0); }, r_hat, search.r_max, search)
      .ratio;
}

MinMaxResult optimize_beta(const BetaSearch& search) {
  if (!(search.lo >= 1.0) || !(search.hi >= search.lo) || !(search.grid_step > 0.0)) {
    throw ParameterError("bad beta search interval");
  }
  RatioSearch scan = search.ratio;
  scan.r_step = search.scan_r_step;

  const auto points = static_cast<std::size_t>(std::floor((search.hi - search.lo) / search.grid_step + 1e-9)) + 1;
  double best_beta = search.lo;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double beta = search.lo + static_cast<double>(i) * search.grid_step;
    const double value = worst_ratio(beta, scan).ratio;
    if (value < best_value) {
      best_value = value;
      best_beta = beta;
    }
  }

  const double a = std::max(search.lo, best_beta - search.grid_step);
  const double b = std::min(search.hi, best_beta + search.grid_step);
  MinMaxResult result;
  result.beta_star = best_beta;
  WorstRatio at_best = worst_ratio(best_beta, search.ratio);
  if (b > a) {
    const auto [beta, value] =
        golden_section_minimize([&](double x) { return worst_ratio(x, search.ratio).ratio; }, a, b, search.tolerance);
    if (value < at_best.ratio) {
      result.beta_star = beta;
      at_best = worst_ratio(beta, search.ratio);
    }
  }
  result.worst_ratio = at_best.ratio;
  result.r_star = at_best.r_star;
  result.r_hat = cap_threshold(result.beta_star, search.ratio.r_max);
  result.capped_region_max = capped_region_max(result.beta_star, result.r_hat, search.ratio);
  return result;
}

// ---------------------------------------------------------------------------

std::string ContributionCase::label() const {
  return std::string(j_tested ? "tested-j case " : "untested-j case ") + std::to_string(number);
}

ContributionCase classify_contribution(const Job& k, bool k_tested, const Job& j, bool j_tested, double beta) {
  if (!j_tested) {
    if (!k_tested) return {false, k.u <= j.u ? 1 : 2};
    if (beta * k.t > j.u) return {false, 5};
    return {false, k.p <= j.u ? 3 : 4};
  }
  if (!k_tested) {
    if (k.u <= beta * j.t) return {true, 1};
    return {true, k.u <= j.p ? 2 : 3};
  }
  if (k.t <= j.t) {
    if (k.p <= beta * j.t) return {true, 4};
    return {true, k.p <= j.p ? 5 : 6};
  }
  if (beta * k.t > j.p) return {true, 9};
  return {true, k.p <= j.p ? 7 : 8};
}

std::size_t AuditReport::cases_covered() const {
  return static_cast<std::size_t>(std::count_if(untested_cases.begin(), untested_cases.end(), [](auto c) { return c > 0; }) +
                                  std::count_if(tested_cases.begin(), tested_cases.end(), [](auto c) { return c > 0; }));
}

void AuditReport::merge(const AuditReport& other) {
  pairs += other.pairs;
  for (std::size_t i = 0; i < untested_cases.size(); ++i) untested_cases[i] += other.untested_cases[i];
  for (std::size_t i = 0; i < tested_cases.size(); ++i) tested_cases[i] += other.tested_cases[i];
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  max_bound_usage = std::max(max_bound_usage, other.max_bound_usage);
}

namespace {

struct CaseBound {
  double value;     // bound on c(k, j) in terms of k and j's parameters
  double rho_mult;  // the same bound as a multiple of rho_j
};

CaseBound case_bound(const ContributionCase& c, const Job& k, double alpha, double beta) {
  if (!c.j_tested) {
    switch (c.number) {
      case 1: return {k.u, alpha};
      case 3: return {k.t + k.p, (1.0 + 1.0 / beta) * alpha};
      case 4: return {k.t, alpha / beta};
      default: return {0.0, 0.0};
    }
  }
  switch (c.number) {
    case 1: return {k.u, beta};
    case 2: return {k.u, 1.0};
    case 4: return {k.t + k.p, 1.0 + beta};
    case 5: return {k.t + k.p, 1.0 + 1.0 / alpha};
    case 6: return {k.t, 1.0};
    case 7: return {k.t + k.p, 1.0 + 1.0 / beta};
    case 8: return {k.t, 1.0 / beta};
    default: return {0.0, 0.0};
  }
}

}  // namespace

AuditReport contribution_audit(const Schedule& schedule, const InstanceOracle& oracle, double alpha, double beta) {
  if (!(alpha >= 1.0) || !(beta >= 1.0)) throw ParameterError("audit needs alpha, beta >= 1");
  const std::vector<Job> jobs = oracle.realized_jobs();
  const std::size_t n = jobs.size();

  std::vector<std::vector<std::pair<double, double>>> blocks(n);
  std::vector<double> completion(n, 0.0);
  for (const ScheduleEvent& e : schedule) {
    if (e.kind == EventKind::SharedSlice) throw ParameterError("contribution audit needs a non-preemptive schedule");
    if (e.job >= n) throw MalformedScheduleError("event names unknown job");
    blocks[e.job].emplace_back(e.start, e.end);
    completion[e.job] = std::max(completion[e.job], e.end);
  }
  std::vector<bool> tested(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = oracle.decision(i);
    if (!d) throw MalformedScheduleError("job " + std::to_string(i) + " never committed");
    tested[i] = *d;
  }

  const double global_mult = std::max({(1.0 + 1.0 / beta) * alpha, 1.0 + 1.0 / alpha, 1.0 + beta});
  AuditReport report;
  auto fail = [&](std::size_t k, std::size_t j, const std::string& what) {
    std::ostringstream msg;
    msg << "pair (k=" << k << ", j=" << j << "): " << what;
    report.failures.push_back(msg.str());
  };

  for (std::size_t j = 0; j < n; ++j) {
    const double cj = completion[j];
    const double tol = kTimeTolerance * std::max(1.0, cj);
    const double rho = optimal_runtime(jobs[j]);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double c = 0.0;
      for (const auto& [s, e] : blocks[k]) c += std::max(0.0, std::min(e, cj) - s);
      total += c;
      ++report.pairs;

      const ContributionCase kase = classify_contribution(jobs[k], tested[k], jobs[j], tested[j], beta);
      if (kase.j_tested) {
        ++report.tested_cases[kase.number - 1];
      } else {
        ++report.untested_cases[kase.number - 1];
      }
      const CaseBound bound = case_bound(kase, jobs[k], alpha, beta);
      if (c > bound.value + tol) {
        fail(k, j, kase.label() + ": c = " + std::to_string(c) + " exceeds " + std::to_string(bound.value));
      }
      if (bound.value > bound.rho_mult * rho + tol) {
        fail(k, j, kase.label() + ": case value " + std::to_string(bound.value) + " exceeds " +
                       std::to_string(bound.rho_mult) + " rho_j");
      }
      if (c > global_mult * rho + tol) {
        fail(k, j, kase.label() + ": c = " + std::to_string(c) + " exceeds the global bound");
      }
      if (rho > 0.0) report.max_bound_usage = std::max(report.max_bound_usage, c / (global_mult * rho));
    }
    if (std::abs(total - cj) > tol) {
      fail(j, j, "contributions sum to " + std::to_string(total) + " but C_j = " + std::to_string(cj));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Statistics summarize(const std::vector<double>& samples) {
  Statistics s;
  s.trials = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  s.min = samples.front();
  s.max = samples.front();
  for (double x : samples) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double squares = 0.0;
    for (double x : samples) squares += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(squares / static_cast<double>(samples.size() - 1));
  }
  const double half = 1.959963984540054 * s.stddev / std::sqrt(static_cast<double>(samples.size()));
  s.ci_lo = s.mean - half;
  s.ci_hi = s.mean + half;
  return s;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) {
  return Rng(base_seed, "monte-carlo").split(index).seed();
}

Statistics monte_carlo(const std::function<double(std::uint64_t)>& trial, std::size_t trials, std::uint64_t base_seed) {
  if (trials == 0) throw ParameterError("monte carlo needs at least one trial");
  std::vector<double> samples(trials);
  for (std::size_t i = 0; i < trials; ++i) samples[i] = trial(trial_seed(base_seed, i));
  return summarize(samples);
}

double expected_makespan_ratio(const Job& job) {
  const double q = makespan_test_probability(job.ratio());
  const double expected = q * (job.t + job.p) + (1.0 - q) * job.u;
  return safe_ratio(expected, optimal_runtime(job));
}

}  // namespace testlab
