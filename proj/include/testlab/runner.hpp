#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

enum class Objective { SumOfCompletions, Makespan };

struct AlgorithmParams {
  double alpha = 1.0;
  std::optional<double> beta;  // defaults: 1 for ab-sort, 1.2574 for rand-sort
  double lambda = 2.0;         // appendix-a-bad only
  std::optional<std::uint64_t> seed;
};

struct AlgorithmInfo {
  std::string_view name;
  Objective objective;
  bool randomized;
};

/// Registered algorithms: ab-sort, rand-sort, force-testing, grr,
/// makespan-det, makespan-rand, appendix-a-bad.
const std::vector<AlgorithmInfo>& registered_algorithms();
std::optional<AlgorithmInfo> find_algorithm(std::string_view name);

/// Runs a registered algorithm. Throws ParameterError for unknown names or
/// a randomized algorithm without a seed.
Schedule run_algorithm(std::string_view name, InstanceOracle& oracle, const AlgorithmParams& params);

struct RunSummary {
  Schedule schedule;
  Outcome outcome;
  double alg_value = 0.0;
  double opt_value = 0.0;
  double ratio = 1.0;
};

/// Runs the algorithm and scores it under its own objective.
RunSummary run_and_score(std::string_view name, InstanceOracle& oracle, const AlgorithmParams& params);

}  // namespace testlab
