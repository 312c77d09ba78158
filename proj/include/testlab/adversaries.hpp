#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testlab/core.hpp"

namespace testlab {

class FamilyError : public Error {
 public:
  using Error::Error;
};

enum class Family {
  LB3,
  LBGeneralHighAlpha,
  LBGeneralHighBeta,
  LBGeneralTwoSets,
  AppendixA,
  GRRTight,
  ForceTestTight,
  MakespanDetLB,
  MakespanRandLB,
};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
std::vector<Family> all_families();

/// Parameters of an instance family. Fields a family does not use are
/// ignored; unset optional fields take the family's default.
struct FamilySpec {
  Family family = Family::LB3;
  std::size_t n = 1;
  std::optional<std::size_t> m;  // second set size; defaults to n
  double eps = 1e-4;
  double lambda = 2.0;
  double beta = 2.0;             // LBGeneralTwoSets only
  std::optional<double> big_m;   // large upper bound; see make_family
  std::uint64_t seed = 0;        // MakespanRandLB draws p from this
};

/// Materializes a family:
///  LB3                 n x (u=1, t=1-eps, p=1)
///  LBGeneralHighAlpha  one job (2, 1, 0)
///  LBGeneralHighBeta   n x (2, 1, 2)
///  LBGeneralTwoSets    n x (beta, 1-eps, beta) + m x (M, 1+eps, 0),
///                      M defaults to 10 beta n (1 + eps)
///  AppendixA           m x (lambda, 1, lambda) + (m^2, m^2/lambda + eps, 0)
///  GRRTight            n x (1, 1/phi, 1)
///  ForceTestTight      n x (M, 1, 0), M defaults to max(2, 10 n)
///  MakespanDetLB       one job (phi, 1, p) with p the adversary's best
///                      response to the threshold-phi rule
///  MakespanRandLB      one job (2, 1, p) with p in {0, 2} drawn from seed
std::vector<Job> make_family(const FamilySpec& spec);

/// Largest makespan ratio among p in {0, u} for a job whose test decision
/// is known; returns the chosen p.
double makespan_best_response(double u, double t, bool tested);

/// Adaptive adversary on n jobs with t = 1 and u = u_bar. A job committed
/// as tested gets p = u_bar while at most delta n decisions (counting this
/// one) have been made; every other commitment gets p = 0.
class AdaptiveAdversary final : public InstanceOracle {
 public:
  AdaptiveAdversary(std::size_t n, double u_bar, double delta);

  double delta() const { return delta_; }
  double u_bar() const { return u_bar_; }

 protected:
  double decide(JobId id, bool tested) override;
  std::optional<double> undecided_value(JobId id) const override;

 private:
  double u_bar_;
  double delta_;
};

/// The value AdaptiveAdversary assigns to a commitment, given how many
/// decisions were made before it.
double adaptive_reveal_value(std::size_t n, double u_bar, double delta, std::size_t decisions_before, bool tested);

enum class RandomProfile { Uniform, HeavyRatio, NearThreshold };

std::string_view profile_name(RandomProfile profile);
std::optional<RandomProfile> parse_profile(std::string_view name);

/// Seeded random instance. u, t ~ U(0, u_max], p ~ U[0, u] (with some mass
/// on the endpoints 0 and u). HeavyRatio draws r log-uniformly in [1, 100];
/// NearThreshold puts r at or near 1, phi or 2.
std::vector<Job> random_instance(std::size_t n, double u_max, std::uint64_t seed, RandomProfile profile);

/// Seeded random instance with t = 1 for every job.
std::vector<Job> random_unit_instance(std::size_t n, double u_max, std::uint64_t seed);

/// The straw-man "small upper limit" policy on an AppendixA instance: jobs
/// with u/t < lambda run first untested by increasing u, then the rest run
/// untested by increasing u. Throws FamilyError on other instances.
Schedule appendix_a_bad_policy(InstanceOracle& oracle, double lambda);

}  // namespace testlab
