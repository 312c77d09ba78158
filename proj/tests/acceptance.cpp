// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. An optional argument selects a single criterion by number.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "testlab/adversaries.hpp"
#include "testlab/algorithms.hpp"
#include "testlab/analysis.hpp"
#include "testlab/cli.hpp"
#include "testlab/oracle.hpp"
#include "testlab/runner.hpp"

using namespace testlab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Criterion {
  int number;
  std::string name;
  double time_limit;  // seconds, 0 = none
  std::function<Verdict()> run;
};

std::string fmt(const char* format, auto... values) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, values...);
  return buffer;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> values;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) values.push_back(std::stod(cell));
  return values;
}

std::vector<double> cli_values(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (run_cli(args, out, err) != 0) return {};
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  return parse_row(row);
}

Outcome score(const std::vector<Job>& jobs, const std::function<Schedule(InstanceOracle&)>& alg) {
  StaticInstance oracle(jobs);
  const Schedule s = alg(oracle);
  return outcome_from_schedule(s, oracle);
}

const RandomProfile kProfiles[] = {RandomProfile::Uniform, RandomProfile::HeavyRatio, RandomProfile::NearThreshold};

Verdict sort_parameter_optimum() {
  Verdict v;
  const auto row = cli_values({"optimize", "--target", "alphabeta"});
  v.require(row.size() == 3, "optimize --target alphabeta failed");
  if (!v.pass) return v;
  v.require(row[0] == 1.0 && row[1] == 1.0 && row[2] == 4.0, fmt("got (%g, %g) f=%.9g", row[0], row[1], row[2]));
  v.require(f_alpha_beta(1, 1) == 4.0, "f(1,1) != 4");
  const GridMinimum grid = minimize_f_alpha_beta(1, 3, 1e-3);
  v.require(grid.alpha == 1 && grid.beta == 1 && grid.value == 4.0, "grid minimum not at (1,1)");
  if (v.pass) v.detail = "(alpha, beta) = (1, 1), f = 4.000000";
  return v;
}

Verdict randomized_constants() {
  Verdict v;
  const auto row = cli_values({"optimize", "--target", "beta"});
  v.require(row.size() == 5, "optimize --target beta failed");
  if (!v.pass) return v;
  const double expected[] = {1.2574, 3.3794, 1.4386, 2.1637, 3.2574};
  const char* names[] = {"beta", "worst ratio", "r*", "r_hat", "capped max"};
  for (int i = 0; i < 5; ++i) {
    v.require(std::abs(row[i] - expected[i]) <= 1e-3, fmt("%s = %.6f, expected %.4f", names[i], row[i], expected[i]));
  }
  if (v.pass) {
    v.detail = fmt("beta=%.6f ratio=%.6f r*=%.6f r_hat=%.6f capped=%.6f", row[0], row[1], row[2], row[3], row[4]);
  }
  return v;
}

Verdict sort_lower_bound() {
  Verdict v;
  const auto sort11 = [](InstanceOracle& o) { return alpha_beta_sort(o, 1, 1); };
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (double eps : {0.5, 0.1, 0.01}) {
      const double nn = static_cast<double>(n);
      const double expected = nn * nn * (1 - eps) + nn * nn / 2 + nn / 2;
      const double got = score(make_family({.family = Family::LB3, .n = n, .eps = eps}), sort11).sum_completion;
      v.require(rel_close(got, expected, 1e-6), fmt("n=%zu eps=%g: %.10g vs %.10g", n, eps, got, expected));
    }
  }
  const double ratio = score(make_family({.family = Family::LB3, .n = 10000, .eps = 1e-4}), sort11).ratio_sum;
  v.require(std::abs(ratio - 3.0) <= 0.01, fmt("ratio at n=1e4 is %.6f", ratio));
  if (v.pass) v.detail = fmt("formula matched; ratio(n=1e4) = %.6f", ratio);
  return v;
}

Verdict grr_tightness() {
  Verdict v;
  for (std::size_t n : {1u, 10u, 100u, 1000u}) {
    const double nn = static_cast<double>(n);
    const double got = score(make_family({.family = Family::GRRTight, .n = n}), golden_round_robin).sum_completion;
    v.require(rel_close(got, nn * nn * kPhi, 1e-6), fmt("n=%zu: %.10g vs %.10g", n, got, nn * nn * kPhi));
  }
  const double ratio = score(make_family({.family = Family::GRRTight, .n = 10000}), golden_round_robin).ratio_sum;
  v.require(std::abs(ratio - 2 * kPhi) <= 0.01, fmt("ratio at n=1e4 is %.6f", ratio));
  if (v.pass) v.detail = fmt("value n^2 phi matched; ratio(n=1e4) = %.6f", ratio);
  return v;
}

Verdict upper_bounds() {
  Verdict v;
  std::size_t violations = 0, instances = 0;
  double worst[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const std::size_t n = 1 + seed % 50;
    const auto jobs = random_instance(n, 10.0, seed, kProfiles[seed % 3]);
    const double r[4] = {
        score(jobs, [](InstanceOracle& o) { return alpha_beta_sort(o, 1, 1); }).ratio_sum,
        score(jobs, golden_round_robin).ratio_sum,
        score(jobs, makespan_det).ratio_makespan,
        score(random_unit_instance(n, 10.0, seed), force_testing).ratio_sum,
    };
    const double bound[4] = {4.0, 2 * kPhi, kPhi, 2.0};
    for (int i = 0; i < 4; ++i) {
      worst[i] = std::max(worst[i], r[i]);
      if (r[i] > bound[i] + 1e-9) ++violations;
    }
    ++instances;
  }
  v.require(violations == 0, fmt("%zu violations", violations));
  v.detail = fmt("%zu instances, worst: sort %.4f, grr %.4f, makespan %.4f, force %.4f; %zu violations", instances,
                 worst[0], worst[1], worst[2], worst[3], violations);
  return v;
}

Verdict randomized_sort_mean() {
  Verdict v;
  struct Case {
    std::string name;
    std::vector<Job> jobs;
  };
  std::vector<Case> battery{
      {"lb3", make_family({.family = Family::LB3, .n = 50, .eps = 0.01})},
      {"lb-high-alpha", make_family({.family = Family::LBGeneralHighAlpha})},
      {"lb-high-beta", make_family({.family = Family::LBGeneralHighBeta, .n = 50})},
      {"lb-two-sets", make_family({.family = Family::LBGeneralTwoSets, .n = 50, .eps = 0.01})},
      {"appendix-a", make_family({.family = Family::AppendixA, .m = 20, .eps = 0.01})},
      {"grr-tight", make_family({.family = Family::GRRTight, .n = 50})},
      {"force-test-tight", make_family({.family = Family::ForceTestTight, .n = 50})},
  };
  for (RandomProfile profile : kProfiles) {
    battery.push_back({std::string("random-") + std::string(profile_name(profile)), random_instance(30, 10.0, 2024, profile)});
  }
  double worst_margin = -1e9;
  std::string worst_name;
  for (const Case& c : battery) {
    const Statistics stats = monte_carlo(
        [&](std::uint64_t seed) {
          StaticInstance oracle(c.jobs);
          return run_and_score("rand-sort", oracle, {.seed = seed}).ratio;
        },
        1000, 77);
    const double limit = kRandomizedRatio + 3 * stats.stddev / std::sqrt(1000.0);
    v.require(stats.mean <= limit, fmt("%s: mean %.5f > %.5f", c.name.c_str(), stats.mean, limit));
    if (stats.mean - limit > worst_margin) worst_margin = stats.mean - limit, worst_name = c.name;
  }
  if (v.pass) v.detail = fmt("%zu families, closest: %s (%.4f below limit)", battery.size(), worst_name.c_str(), -worst_margin);
  return v;
}

Verdict makespan_randomized() {
  Verdict v;
  for (double p : {0.0, 2.0}) {
    const double e = expected_makespan_ratio({0, 2, 1, p});
    v.require(std::abs(e - 4.0 / 3.0) <= 1e-9, fmt("p=%g: expected ratio %.12f", p, e));
  }
  const std::vector<Job> jobs{{0, 2, 1, 2}};
  const Statistics s = monte_carlo(
      [&](std::uint64_t seed) {
        StaticInstance oracle(jobs);
        const Schedule sched = makespan_rand(oracle, seed);
        return outcome_from_schedule(sched, oracle).ratio_makespan;
      },
      10000, 7);
  v.require(s.ci_lo <= 4.0 / 3.0 && 4.0 / 3.0 <= s.ci_hi, fmt("CI [%.5f, %.5f] misses 4/3", s.ci_lo, s.ci_hi));
  for (double r : {1.0, 1.5, 2.0, 3.0, 10.0}) {
    for (double p : {0.0, r}) {
      const double e = expected_makespan_ratio({0, r, 1, p});
      v.require(std::abs(e - r * r / (r * r - r + 1)) <= 1e-9, fmt("r=%g p=%g: %.12f", r, p, e));
    }
  }
  if (v.pass) v.detail = fmt("MC mean %.5f, CI [%.5f, %.5f]", s.mean, s.ci_lo, s.ci_hi);
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::size_t permutation_checks = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto jobs = random_instance(1 + seed % 8, 10.0, seed, kProfiles[seed % 3]);
    const double closed = opt_sum_completion(jobs);
    const double brute = brute_opt_sum(jobs).best_value;
    v.require(rel_close(brute, closed, 1e-9), fmt("seed %llu: %.12g vs %.12g", (unsigned long long)seed, brute, closed));
    if (jobs.size() <= 5) {
      ++permutation_checks;
      const double perm = brute_opt_sum_permutations(jobs).best_value;
      v.require(rel_close(perm, closed, 1e-9), fmt("seed %llu permutations: %.12g", (unsigned long long)seed, perm));
    }
  }
  if (v.pass) v.detail = fmt("1000 instances, %zu permutation checks", permutation_checks);
  return v;
}

Verdict processor_sharing() {
  Verdict v;
  double max_error = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto jobs = random_instance(1 + seed % 30, 10.0, seed, kProfiles[seed % 3]);
    StaticInstance oracle(jobs);
    const Schedule s = golden_round_robin(oracle);
    const Outcome o = outcome_from_schedule(s, oracle);
    std::vector<double> works;
    for (const Job& j : jobs) works.push_back(algorithmic_runtime(j, *oracle.decision(j.id)));
    const auto closed = grr_closed_form(works);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const double err = std::abs(o.completion[i] - closed[i]) / std::max(1.0, closed[i]);
      max_error = std::max(max_error, err);
      v.require(err <= 1e-9, fmt("seed %llu job %zu: %.12g vs %.12g", (unsigned long long)seed, i, o.completion[i], closed[i]));
    }
  }
  if (v.pass) v.detail = fmt("1000 instances, max relative error %.2e", max_error);
  return v;
}

Verdict contribution_bounds() {
  Verdict v;
  AuditReport total;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto jobs = random_instance(2 + seed % 11, 10.0, seed, kProfiles[seed % 3]);
    StaticInstance oracle(jobs);
    total.merge(contribution_audit(alpha_beta_sort(oracle, 1, 1), oracle, 1, 1));
  }
  for (const auto& family : {make_family({.family = Family::LB3, .n = 20, .eps = 0.1}),
                             make_family({.family = Family::AppendixA, .m = 10, .eps = 0.1}),
                             make_family({.family = Family::LBGeneralTwoSets, .n = 10, .eps = 0.1})}) {
    StaticInstance oracle(family);
    total.merge(contribution_audit(alpha_beta_sort(oracle, 1, 1), oracle, 1, 1));
  }
  v.require(total.passed(), total.failures.empty() ? "" : total.failures.front());
  v.require(total.cases_covered() == 14, fmt("only %zu of 14 cases exercised", total.cases_covered()));
  std::string tally;
  for (std::size_t c : total.untested_cases) tally += std::to_string(c) + " ";
  tally += "/ ";
  for (std::size_t c : total.tested_cases) tally += std::to_string(c) + " ";
  if (v.pass) v.detail = fmt("%zu pairs, cases %s", total.pairs, tally.c_str());
  return v;
}

Verdict appendix_a() {
  Verdict v;
  double previous = 0.0;
  std::string trail;
  for (std::size_t m : {100u, 150u, 200u}) {
    const auto jobs = make_family({.family = Family::AppendixA, .m = m, .eps = 0.01, .lambda = 2});
    const double bad = score(jobs, [](InstanceOracle& o) { return appendix_a_bad_policy(o, 2); }).ratio_sum;
    const double sort = score(jobs, [](InstanceOracle& o) { return alpha_beta_sort(o, 1, 1); }).ratio_sum;
    v.require(bad > previous, fmt("ratio did not increase at m=%zu", m));
    v.require(sort <= 4.0 + 1e-9, fmt("SORT ratio %.4f at m=%zu", sort, m));
    previous = bad;
    trail += fmt("m=%zu: %.3f (sort %.3f) ", m, bad, sort);
  }
  if (v.pass) v.detail = trail;
  return v;
}

Verdict adaptive_floor() {
  Verdict v;
  std::string trail;
  for (const AlgorithmInfo& info : registered_algorithms()) {
    if (info.name == "appendix-a-bad") continue;
    const std::string name(info.name);
    const auto one_run = [&](std::uint64_t seed) {
      AdaptiveAdversary adversary(100, 1.6, 0.6);
      return run_and_score(name, adversary, {.seed = seed}).ratio;
    };
    const double ratio = info.randomized ? monte_carlo(one_run, 1000, 11).mean : one_run(0);
    v.require(ratio >= 1.5, fmt("%s: %.4f", name.c_str(), ratio));
    trail += fmt("%s %.3f ", name.c_str(), ratio);
  }
  v.detail = trail;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<Criterion> criteria{
      {1, "parameter optimum (alpha, beta) = (1, 1)", 5, sort_parameter_optimum},
      {2, "randomized analysis constants", 30, randomized_constants},
      {3, "(1,1)-SORT lower-bound family", 0, sort_lower_bound},
      {4, "Golden Round Robin tightness", 0, grr_tightness},
      {5, "upper-bound property suite", 120, upper_bounds},
      {6, "Randomized-SORT empirical mean", 0, randomized_sort_mean},
      {7, "randomized makespan", 0, makespan_randomized},
      {8, "oracle equivalence", 0, oracle_equivalence},
      {9, "processor-sharing fidelity", 0, processor_sharing},
      {10, "contribution audit", 0, contribution_bounds},
      {11, "small-upper-limit counterexample", 0, appendix_a},
      {12, "adaptive adversary sanity floor", 0, adaptive_floor},
  };
  int failures = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.number != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = c.run();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && seconds > c.time_limit) {
      verdict.pass = false;
      verdict.detail += fmt(" [over time limit %.0f s]", c.time_limit);
    }
    failures += verdict.pass ? 0 : 1;
    std::printf("%s criterion %2d: %s | %s (%.2f s)\n", verdict.pass ? "PASS" : "FAIL", c.number, c.name.c_str(),
                verdict.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion numbered %d\n", only);
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
