#include "testlab/runner.hpp"

#include "testlab/adversaries.hpp"
#include "testlab/algorithms.hpp"
#include "testlab/analysis.hpp"

namespace testlab {

const std::vector<AlgorithmInfo>& registered_algorithms() {
  static const std::vector<AlgorithmInfo> kAlgorithms{
      {"ab-sort", Objective::SumOfCompletions, false},
      {"rand-sort", Objective::SumOfCompletions, true},
      {"force-testing", Objective::SumOfCompletions, false},
      {"grr", Objective::SumOfCompletions, false},
      {"makespan-det", Objective::Makespan, false},
      {"makespan-rand", Objective::Makespan, true},
      {"appendix-a-bad", Objective::SumOfCompletions, false},
  };
  return kAlgorithms;
}

std::optional<AlgorithmInfo> find_algorithm(std::string_view name) {
  for (const AlgorithmInfo& info : registered_algorithms()) {
    if (info.name == name) return info;
  }
  return std::nullopt;
}

Schedule run_algorithm(std::string_view name, InstanceOracle& oracle, const AlgorithmParams& params) {
  const auto info = find_algorithm(name);
  if (!info) throw ParameterError("unknown algorithm '" + std::string(name) + "'");
  if (info->randomized && !params.seed) throw ParameterError(std::string(name) + " needs a seed");

  if (name == "ab-sort") return alpha_beta_sort(oracle, params.alpha, params.beta.value_or(1.0));
  if (name == "rand-sort") {
    const double beta = params.beta.value_or(kRandomizedBeta);
    return randomized_sort(oracle, beta, [beta](double r) { return phat(r, beta); }, *params.seed);
  }
  if (name == "force-testing") return force_testing(oracle);
  if (name == "grr") return golden_round_robin(oracle);
  if (name == "makespan-det") return makespan_det(oracle);
  if (name == "makespan-rand") return makespan_rand(oracle, *params.seed);
  return appendix_a_bad_policy(oracle, params.lambda);
}

RunSummary run_and_score(std::string_view name, InstanceOracle& oracle, const AlgorithmParams& params) {
  RunSummary run;
  run.schedule = run_algorithm(name, oracle, params);
  run.outcome = outcome_from_schedule(run.schedule, oracle);
  if (find_algorithm(name)->objective == Objective::Makespan) {
    run.alg_value = run.outcome.makespan;
    run.opt_value = run.outcome.opt_makespan;
    run.ratio = run.outcome.ratio_makespan;
  } else {
    run.alg_value = run.outcome.sum_completion;
    run.opt_value = run.outcome.opt_sum;
    run.ratio = run.outcome.ratio_sum;
  }
  return run;
}

}  // namespace testlab
