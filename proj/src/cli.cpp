#include "testlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "testlab/adversaries.hpp"
#include "testlab/algorithms.hpp"
#include "testlab/analysis.hpp"
#include "testlab/io.hpp"
#include "testlab/oracle.hpp"
#include "testlab/runner.hpp"
#include "testlab/verify.hpp"

namespace testlab {
namespace {

/// Thrown for bad flag combinations detected after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct InstanceArgs {
  std::string path;
  std::string family;
  std::size_t n = 10;
  std::optional<std::size_t> m;
  double eps = 1e-4;
  double lambda = 2.0;
  double family_beta = 2.0;
  std::optional<double> big_m;
  std::uint64_t family_seed = 0;
  double delta = 0.6;
  double u_bar = 1.6;

  void add_to(CLI::App& app) {
    app.add_option("--instance", path, "Instance CSV (id,u,t,p)");
    app.add_option("--family", family, "Instance family, or 'adaptive' for the adaptive adversary");
    app.add_option("--n", n, "Family size n")->check(CLI::PositiveNumber);
    app.add_option("--m", m, "Second family size m (defaults to n)")->check(CLI::PositiveNumber);
    app.add_option("--eps", eps, "Family epsilon");
    app.add_option("--lambda", lambda, "lambda of the appendix-a family");
    app.add_option("--family-beta", family_beta, "beta of the two-set family");
    app.add_option("--M", big_m, "Large upper bound of the two-set and force-test families");
    app.add_option("--family-seed", family_seed, "Seed for randomized families");
    app.add_option("--delta", delta, "Adaptive adversary delta");
    app.add_option("--u-bar", u_bar, "Adaptive adversary upper bound");
  }

  std::string label() const {
    if (!path.empty()) return path.substr(path.find_last_of('/') + 1);
    return family;
  }

  FamilySpec spec(std::size_t size) const {
    const auto parsed = parse_family(family);
    if (!parsed) throw UsageError("unknown family '" + family + "'");
    FamilySpec spec;
    spec.family = *parsed;
    spec.n = size;
    spec.m = m;
    spec.eps = eps;
    spec.lambda = lambda;
    spec.beta = family_beta;
    spec.big_m = big_m;
    spec.seed = family_seed;
    return spec;
  }

  /// Builds a fresh oracle; `size` overrides n for sweeps.
  std::unique_ptr<InstanceOracle> make(std::optional<std::size_t> size = std::nullopt) const {
    if (path.empty() == family.empty()) throw UsageError("give exactly one of --instance and --family");
    if (!path.empty()) return std::make_unique<StaticInstance>(read_instance_file(path));
    if (family == "adaptive") return std::make_unique<AdaptiveAdversary>(size.value_or(n), u_bar, delta);
    return std::make_unique<StaticInstance>(make_family(spec(size.value_or(n))));
  }
};

struct AlgorithmArgs {
  std::string alg;
  double alpha = 1.0;
  std::optional<double> beta;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App& app) {
    app.add_option("--alg", alg, "Algorithm name")->required();
    app.add_option("--alpha", alpha, "alpha of ab-sort");
    app.add_option("--beta", beta, "beta of ab-sort / rand-sort");
    app.add_option("--seed", seed, "Seed for randomized algorithms (fallback: TESTLAB_SEED)");
  }

  AlgorithmInfo info() const {
    const auto info = find_algorithm(alg);
    if (!info) throw UsageError("unknown algorithm '" + alg + "'");
    return *info;
  }

  AlgorithmParams params(const InstanceArgs& instance) const {
    const AlgorithmInfo algorithm = info();
    AlgorithmParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.lambda = instance.lambda;
    p.seed = seed;
    if (!p.seed) {
      if (const char* env = std::getenv("TESTLAB_SEED")) {
        try {
          p.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError("TESTLAB_SEED is not an unsigned integer");
        }
      }
    }
    if (algorithm.randomized && !p.seed) throw UsageError(alg + " needs --seed or TESTLAB_SEED");
    return p;
  }
};

/// Output goes to a file when a path is given, otherwise to the CLI stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw IoError("cannot write " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

template <typename T>
std::vector<T> parse_range(const std::string& text, const std::function<T(const std::string&)>& convert) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("range must look like a:b:step");
  T first{}, last{}, step{};
  try {
    first = convert(parts[0]);
    last = convert(parts[1]);
    step = convert(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("range must look like a:b:step");
  }
  if (!(step > T{})) throw UsageError("range step must be positive");
  std::vector<T> values;
  for (std::size_t i = 0;; ++i) {
    const T value = first + static_cast<T>(i) * step;
    if (value > last + (std::is_floating_point_v<T> ? T(1e-9) * std::max(T(1), last) : T{})) break;
    values.push_back(value);
  }
  if (values.empty()) throw UsageError("empty range " + text);
  return values;
}

ResultRow result_row(const std::string& alg, const std::string& instance, std::size_t n, const RunSummary& run) {
  return {alg, instance, n, run.alg_value, run.opt_value, run.ratio};
}

// ---------------------------------------------------------------------------

struct SimulateCmd {
  InstanceArgs instance;
  AlgorithmArgs algorithm;
  std::size_t trials = 1;
  std::string out_path;
  std::string events_path;

  int run(std::ostream& out) const {
    const AlgorithmParams params = algorithm.params(instance);
    Sink sink(out_path, out);
    if (trials > 1) {
      std::size_t n = 0;
      const std::uint64_t base = params.seed.value_or(0);
      const Statistics stats = monte_carlo(
          [&](std::uint64_t seed) {
            AlgorithmParams trial_params = params;
            trial_params.seed = seed;
            auto oracle = instance.make();
            n = oracle->size();
            return run_and_score(algorithm.alg, *oracle, trial_params).ratio;
          },
          trials, base);
      sink.get() << kStatisticsHeader << '\n';
      write_statistics_row(sink.get(), algorithm.alg, instance.label(), n, stats);
      return kExitOk;
    }
    auto oracle = instance.make();
    const RunSummary run = run_and_score(algorithm.alg, *oracle, params);
    sink.get() << kResultHeader << '\n';
    write_result_row(sink.get(), result_row(algorithm.alg, instance.label(), oracle->size(), run));
    if (!events_path.empty()) {
      Sink events(events_path, out);
      write_events_csv(events.get(), run.schedule);
    }
    return kExitOk;
  }
};

struct FamilyCmd {
  InstanceArgs instance;
  std::string out_path;

  int run(std::ostream& out) const {
    if (instance.family.empty() || instance.family == "adaptive") {
      throw UsageError("family needs a static --family name");
    }
    const auto jobs = make_family(instance.spec(instance.n));
    Sink sink(out_path, out);
    write_instance_csv(sink.get(), jobs);
    return kExitOk;
  }
};

struct SweepCmd {
  InstanceArgs instance;
  AlgorithmArgs algorithm;
  std::string n_range;
  std::string r_range;
  std::string out_path;

  int run(std::ostream& out) const {
    if (n_range.empty() == r_range.empty()) throw UsageError("give exactly one of --n-range and --r-range");
    const AlgorithmParams params = algorithm.params(instance);
    Sink sink(out_path, out);
    std::ostream& o = sink.get();
    if (!n_range.empty()) {
      if (instance.family.empty()) throw UsageError("--n-range needs --family");
      const auto sizes = parse_range<std::size_t>(n_range, [](const std::string& s) { return std::stoul(s); });
      if (sizes.front() == 0) throw UsageError("sizes must be >= 1");
      o << kResultHeader << '\n';
      for (std::size_t n : sizes) {
        auto oracle = instance.make(n);
        write_result_row(o, result_row(algorithm.alg, instance.family, n, run_and_score(algorithm.alg, *oracle, params)));
      }
      return kExitOk;
    }
    const auto ratios = parse_range<double>(r_range, [](const std::string& s) { return std::stod(s); });
    if (ratios.front() <= 0.0) throw UsageError("ratios must be positive");
    o << kResultHeader << '\n';
    for (double r : ratios) {
      // Single job (u = r, t = 1) against the worse of p = 0 and p = u.
      ResultRow worst{algorithm.alg, "r=" + format_real(r), 1, 0.0, 0.0, -1.0};
      for (double p : {0.0, r}) {
        const Job job{0, r, 1.0, p};
        ResultRow row{algorithm.alg, worst.instance, 1, 0.0, optimal_runtime(job), 0.0};
        if (algorithm.alg == "makespan-rand") {
          row.ratio = expected_makespan_ratio(job);
          row.alg_value = row.ratio * row.opt_value;
        } else {
          StaticInstance oracle({job});
          const RunSummary run = run_and_score(algorithm.alg, oracle, params);
          row.alg_value = run.alg_value;
          row.ratio = run.ratio;
        }
        if (row.ratio > worst.ratio) worst = row;
      }
      write_result_row(o, worst);
    }
    return kExitOk;
  }
};

struct OptimizeCmd {
  std::string target;
  std::string out_path;

  int run(std::ostream& out) const {
    Sink sink(out_path, out);
    if (target == "alphabeta") {
      const GridMinimum best = minimize_f_alpha_beta();
      sink.get() << "alpha,beta,f\n"
                 << format_real(best.alpha) << ',' << format_real(best.beta) << ',' << format_real(best.value) << '\n';
      return kExitOk;
    }
    const MinMaxResult r = optimize_beta();
    sink.get() << "beta_star,worst_ratio,r_star,r_hat,capped_region_max\n"
               << format_real(r.beta_star) << ',' << format_real(r.worst_ratio) << ',' << format_real(r.r_star) << ','
               << format_real(r.r_hat) << ',' << format_real(r.capped_region_max) << '\n';
    return kExitOk;
  }
};

struct AuditCmd {
  InstanceArgs instance;
  double alpha = 1.0;
  double beta = 1.0;

  int run(std::ostream& out, std::ostream& err) const {
    auto oracle = instance.make();
    const Schedule schedule = alpha_beta_sort(*oracle, alpha, beta);
    const AuditReport report = contribution_audit(schedule, *oracle, alpha, beta);
    out << "case,count\n";
    for (std::size_t i = 0; i < report.untested_cases.size(); ++i) {
      out << "untested-" << i + 1 << ',' << report.untested_cases[i] << '\n';
    }
    for (std::size_t i = 0; i < report.tested_cases.size(); ++i) {
      out << "tested-" << i + 1 << ',' << report.tested_cases[i] << '\n';
    }
    out << "pairs," << report.pairs << '\n'
        << "max_bound_usage," << format_real(report.max_bound_usage) << '\n'
        << "status," << (report.passed() ? "pass" : "fail") << '\n';
    for (const std::string& f : report.failures) err << f << '\n';
    return report.passed() ? kExitOk : kExitViolation;
  }
};

struct VerifyCmd {
  std::size_t max_n = 8;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string fault;
  std::string counterexample_path;

  int run(std::ostream& out, std::ostream& err) const {
    VerifyOptions options;
    options.max_n = max_n;
    options.trials = trials;
    options.seed = seed.value_or(1);
    if (!seed) {
      if (const char* env = std::getenv("TESTLAB_SEED")) options.seed = std::strtoull(env, nullptr, 10);
    }
    if (fault == "spt") {
      options.fault = InjectedFault::SptComparator;
    } else if (!fault.empty()) {
      throw UsageError("unknown fault '" + fault + "'");
    }
    const VerifyReport report = run_verification(options);
    out << "suite,checks,failures,status\n";
    for (const SuiteResult& s : report.suites) {
      out << s.name << ',' << s.checks << ',' << s.failures << ',' << (s.passed() ? "pass" : "fail") << '\n';
    }
    const SuiteResult* failed = report.first_failed();
    if (!failed) return kExitOk;
    err << failed->name << ": " << failed->first_failure << '\n';
    if (failed->counterexample) {
      if (counterexample_path.empty()) {
        out << "# counterexample from " << failed->name << '\n';
        write_instance_csv(out, *failed->counterexample);
      } else {
        Sink sink(counterexample_path, out);
        write_instance_csv(sink.get(), *failed->counterexample);
      }
    }
    return kExitViolation;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online scheduling with testing: simulation and verification"};
  app.require_subcommand(1);

  SimulateCmd simulate;
  auto* sim = app.add_subcommand("simulate", "Run one algorithm on one instance");
  simulate.instance.add_to(*sim);
  simulate.algorithm.add_to(*sim);
  sim->add_option("--trials", simulate.trials, "Independent seeded trials (emits statistics)")->check(CLI::PositiveNumber);
  sim->add_option("--out", simulate.out_path, "Results CSV path (default stdout)");
  sim->add_option("--events", simulate.events_path, "Event log CSV path");

  FamilyCmd family;
  auto* fam = app.add_subcommand("family", "Write a family instance as CSV");
  family.instance.add_to(*fam);
  fam->add_option("--out", family.out_path, "Instance CSV path (default stdout)");

  SweepCmd sweep;
  auto* swp = app.add_subcommand("sweep", "One result row per size or ratio");
  sweep.instance.add_to(*swp);
  sweep.algorithm.add_to(*swp);
  swp->add_option("--n-range", sweep.n_range, "Sizes a:b:step");
  swp->add_option("--r-range", sweep.r_range, "Single-job ratios a:b:step");
  swp->add_option("--out", sweep.out_path, "Results CSV path (default stdout)");

  OptimizeCmd optimize;
  auto* opt = app.add_subcommand("optimize", "Parameter optimization");
  opt->add_option("--target", optimize.target, "beta or alphabeta")
      ->required()
      ->check(CLI::IsMember({"beta", "alphabeta"}));
  opt->add_option("--out", optimize.out_path, "Output CSV path (default stdout)");

  AuditCmd audit;
  auto* aud = app.add_subcommand("audit", "Contribution audit of (alpha,beta)-SORT");
  audit.instance.add_to(*aud);
  aud->add_option("--alpha", audit.alpha, "alpha");
  aud->add_option("--beta", audit.beta, "beta");

  VerifyCmd verify;
  auto* ver = app.add_subcommand("verify", "Run the verification battery");
  ver->add_option("--max-n", verify.max_n, "Largest instance size (<= 12)")->check(CLI::Range(1, 12));
  ver->add_option("--trials", verify.trials, "Random instances per suite")->check(CLI::PositiveNumber);
  ver->add_option("--seed", verify.seed, "Seed (fallback: TESTLAB_SEED)");
  ver->add_option("--inject-fault", verify.fault)->group("");
  ver->add_option("--counterexample", verify.counterexample_path, "Write the first counterexample here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return simulate.run(out);
    if (fam->parsed()) return family.run(out);
    if (swp->parsed()) return sweep.run(out);
    if (opt->parsed()) return optimize.run(out);
    if (aud->parsed()) return audit.run(out, err);
    if (ver->parsed()) return verify.run(out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FamilyError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace testlab
