#include "testlab/adversaries.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "testlab/rng.hpp"

namespace testlab {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::LB3, "lb3"},
    {Family::LBGeneralHighAlpha, "lb-high-alpha"},
    {Family::LBGeneralHighBeta, "lb-high-beta"},
    {Family::LBGeneralTwoSets, "lb-two-sets"},
    {Family::AppendixA, "appendix-a"},
    {Family::GRRTight, "grr-tight"},
    {Family::ForceTestTight, "force-test-tight"},
    {Family::MakespanDetLB, "makespan-det-lb"},
    {Family::MakespanRandLB, "makespan-rand-lb"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw FamilyError(what);
}

void append_copies(std::vector<Job>& jobs, std::size_t count, double u, double t, double p) {
  for (std::size_t i = 0; i < count; ++i) jobs.push_back(Job{jobs.size(), u, t, p});
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& entry : kFamilyNames) out.push_back(entry.first);
  return out;
}

double makespan_best_response(double u, double t, bool tested) {
  double best_p = 0.0;
  double best_ratio = -1.0;
  for (double p : {0.0, u}) {
    const Job job{0, u, t, p};
    const double ratio = safe_ratio(algorithmic_runtime(job, tested), optimal_runtime(job));
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_p = p;
    }
  }
  return best_p;
}

std::vector<Job> make_family(const FamilySpec& spec) {
  require(spec.n >= 1, "family size n must be >= 1");
  require(spec.eps > 0.0 && std::isfinite(spec.eps), "eps must be > 0");
  const std::size_t n = spec.n;
  const std::size_t m = spec.m.value_or(n);
  require(m >= 1, "family size m must be >= 1");

  std::vector<Job> jobs;
  switch (spec.family) {
    case Family::LB3:
      require(spec.eps < 1.0, "lb3 needs eps < 1");
      append_copies(jobs, n, 1.0, 1.0 - spec.eps, 1.0);
      break;
    case Family::LBGeneralHighAlpha:
      append_copies(jobs, 1, 2.0, 1.0, 0.0);
      break;
    case Family::LBGeneralHighBeta:
      append_copies(jobs, n, 2.0, 1.0, 2.0);
      break;
    case Family::LBGeneralTwoSets: {
      require(spec.eps < 1.0, "lb-two-sets needs eps < 1");
      require(spec.beta >= 1.0 && std::isfinite(spec.beta), "lb-two-sets needs beta >= 1");
      const double big_m = spec.big_m.value_or(10.0 * spec.beta * static_cast<double>(n) * (1.0 + spec.eps));
      require(big_m >= spec.beta, "lb-two-sets needs M >= beta");
      append_copies(jobs, n, spec.beta, 1.0 - spec.eps, spec.beta);
      append_copies(jobs, m, big_m, 1.0 + spec.eps, 0.0);
      break;
    }
    case Family::AppendixA: {
      require(spec.lambda >= 1.0 && std::isfinite(spec.lambda), "appendix-a needs lambda >= 1");
      const double mm = static_cast<double>(m) * static_cast<double>(m);
      append_copies(jobs, m, spec.lambda, 1.0, spec.lambda);
      append_copies(jobs, 1, mm, mm / spec.lambda + spec.eps, 0.0);
      break;
    }
    case Family::GRRTight: {
      double t = 1.0 / kPhi;
      while (!(1.0 >= kPhi * t)) t = std::nextafter(t, 0.0);
      append_copies(jobs, n, 1.0, t, 1.0);
      break;
    }
    case Family::ForceTestTight: {
      const double big_m = spec.big_m.value_or(std::max(2.0, 10.0 * static_cast<double>(n)));
      require(big_m >= 2.0, "force-test-tight needs M >= 2");
      append_copies(jobs, n, big_m, 1.0, 0.0);
      break;
    }
    case Family::MakespanDetLB: {
      const bool tested = kPhi >= kPhi * 1.0;
      append_copies(jobs, 1, kPhi, 1.0, makespan_best_response(kPhi, 1.0, tested));
      break;
    }
    case Family::MakespanRandLB: {
      Rng rng(spec.seed, "makespan-rand-lb");
      append_copies(jobs, 1, 2.0, 1.0, rng.bernoulli(0.5) ? 2.0 : 0.0);
      break;
    }
  }
  return jobs;
}

// ---------------------------------------------------------------------------

double adaptive_reveal_value(std::size_t n, double u_bar, double delta, std::size_t decisions_before, bool tested) {
  const double rank = static_cast<double>(decisions_before + 1);
  return tested && rank <= delta * static_cast<double>(n) ? u_bar : 0.0;
}

namespace {

std::vector<JobView> adversary_views(std::size_t n, double u_bar, double delta) {
  require(u_bar >= 1.0 && std::isfinite(u_bar), "adversary needs u_bar >= 1");
  require(delta >= 0.0 && delta <= 1.0, "adversary needs delta in [0, 1]");
  std::vector<JobView> views;
  views.reserve(n);
  for (std::size_t i = 0; i < n; ++i) views.push_back(JobView{i, u_bar, 1.0});
  return views;
}

}  // namespace

AdaptiveAdversary::AdaptiveAdversary(std::size_t n, double u_bar, double delta)
    : InstanceOracle(adversary_views(n, u_bar, delta)),
      u_bar_(u_bar),
      delta_(delta) {}

double AdaptiveAdversary::decide(JobId /*id*/, bool tested) {
  return adaptive_reveal_value(size(), u_bar_, delta_, decided_count(), tested);
}

std::optional<double> AdaptiveAdversary::undecided_value(JobId /*id*/) const { return std::nullopt; }

// ---------------------------------------------------------------------------

std::string_view profile_name(RandomProfile profile) {
  switch (profile) {
    case RandomProfile::Uniform: return "uniform";
    case RandomProfile::HeavyRatio: return "heavy_ratio";
    case RandomProfile::NearThreshold: return "near_threshold";
  }
  return "?";
}

std::optional<RandomProfile> parse_profile(std::string_view name) {
  for (auto p : {RandomProfile::Uniform, RandomProfile::HeavyRatio, RandomProfile::NearThreshold}) {
    if (profile_name(p) == name) return p;
  }
  return std::nullopt;
}

namespace {

double draw_processing(Rng& rng, double u) {
  const double pick = rng.uniform();
  if (pick < 0.1) return 0.0;
  if (pick < 0.2) return u;
  return std::min(u, u * rng.uniform());
}

}  // namespace

std::vector<Job> random_instance(std::size_t n, double u_max, std::uint64_t seed, RandomProfile profile) {
  if (n == 0 || !(u_max > 0.0)) throw ParameterError("random_instance needs n >= 1 and u_max > 0");
  Rng rng(seed, profile_name(profile));
  constexpr std::array<double, 3> kThresholds{1.0, kPhi, 2.0};
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u_max * rng.uniform_open0();
    double t = 0.0;
    switch (profile) {
      case RandomProfile::Uniform:
        t = u_max * rng.uniform_open0();
        break;
      case RandomProfile::HeavyRatio:
        t = u / std::exp(rng.uniform() * std::log(100.0));
        break;
      case RandomProfile::NearThreshold: {
        const double centre = kThresholds[rng.index(kThresholds.size())];
        const double r = rng.bernoulli(0.3) ? centre : centre * (1.0 + rng.uniform(-0.05, 0.05));
        t = u / r;
        break;
      }
    }
    jobs.push_back(Job{i, u, t, draw_processing(rng, u)});
  }
  return jobs;
}

std::vector<Job> random_unit_instance(std::size_t n, double u_max, std::uint64_t seed) {
  if (n == 0 || !(u_max > 0.0)) throw ParameterError("random_unit_instance needs n >= 1 and u_max > 0");
  Rng rng(seed, "unit");
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u_max * rng.uniform_open0();
    jobs.push_back(Job{i, u, 1.0, draw_processing(rng, u)});
  }
  return jobs;
}

// ---------------------------------------------------------------------------

Schedule appendix_a_bad_policy(InstanceOracle& oracle, double lambda) {
  const auto& jobs = oracle.jobs();
  std::vector<JobId> small, rest;
  for (const JobView& j : jobs) {
    if (j.u < lambda * j.t) {
      small.push_back(j.id);
    } else if (j.u == lambda && j.t == 1.0) {
      rest.push_back(j.id);
    } else {
      throw FamilyError("appendix-a policy: job " + std::to_string(j.id) + " does not belong to the family");
    }
  }
  if (small.size() != 1 || rest.empty()) {
    throw FamilyError("appendix-a policy needs exactly one job with u/t < lambda and at least one other job");
  }
  auto by_u = [&](JobId a, JobId b) { return jobs[a].u < jobs[b].u; };
  std::stable_sort(small.begin(), small.end(), by_u);
  std::stable_sort(rest.begin(), rest.end(), by_u);

  Schedule schedule;
  double now = 0.0;
  for (const auto* group : {&small, &rest}) {
    for (JobId id : *group) {
      oracle.commit(id, false);
      schedule.push_back({id, EventKind::UntestedRun, now, now + jobs[id].u, {}});
      now += jobs[id].u;
    }
  }
  return schedule;
}

}  // namespace testlab
