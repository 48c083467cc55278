#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "beetle/bas.hpp"
#include "beetle/constrained.hpp"
#include "beetle/problem.hpp"
#include "beetle/run_record.hpp"
#include "beetle/swarm.hpp"

namespace beetle {

/// File-system failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { bso, bas, pso };

std::string to_string(Algorithm a);
/// "bso" | "bas" | "pso". Throws NotFound("unknown algorithm ...").
Algorithm parse_algorithm(std::string_view name);

using SolverConfig = std::variant<BsoConfig, PsoConfig, BasConfig>;

Algorithm algorithm_of(const SolverConfig& config);
/// Default configuration for the algorithm.
SolverConfig default_config(Algorithm a);
/// Runs the configured optimizer with the seed replaced by `seed`.
RunRecord run_solver(const Problem& problem, const SolverConfig& config, std::uint64_t seed);

/// Statistics over the final best fitness of repeated trials.
struct TrialSummary {
  std::string problem;
  std::string algorithm;
  std::size_t n_trials = 0;
  double ave = 0.0;
  /// Sample standard deviation (divisor n - 1); 0 when n_trials == 1.
  double std = 0.0;
  double ave_time_s = 0.0;
  double best = 0.0;
  double median = 0.0;
  double worst = 0.0;
  std::vector<std::uint64_t> seeds;
  /// "computed", or "literature" for externally supplied reference rows.
  std::string source = "computed";
};

/// Summary statistics. Values are sorted before accumulation so the result
/// does not depend on trial order. Throws std::invalid_argument when empty
/// or when the spans differ in length.
TrialSummary summarize(std::string problem, std::string algorithm,
                       std::span<const double> final_best, std::span<const double> times_s,
                       std::vector<std::uint64_t> seeds);

struct TrialBatch {
  TrialSummary summary;
  std::vector<RunRecord> runs;  ///< in trial order
};

/// Trial i uses seed base_seed + i. Trials run on up to `threads` workers;
/// the result does not depend on the thread count.
TrialBatch run_trials(const SolverConfig& config, const Problem& problem, std::size_t n_trials,
                      std::uint64_t base_seed, std::size_t threads = 1);

struct ConstrainedBatch {
  TrialBatch batch;                                ///< statistics of the penalized fitness
  std::vector<constrained::FeasibleBest> feasible;  ///< per trial, best feasible point evaluated
};

/// run_trials on the penalized problem, also tracking each trial's best
/// feasible evaluation. Same seeds and trajectories as run_trials on
/// constrained::as_problem(problem, penalty).
ConstrainedBatch run_constrained_trials(const SolverConfig& config,
                                        const constrained::ConstrainedProblem& problem,
                                        const constrained::PenaltyConfig& penalty,
                                        std::size_t n_trials, std::uint64_t base_seed,
                                        std::size_t threads = 1);

/// Worker count: BSO_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_budget();

/// Runs fn(0..count-1) on up to `threads` workers. The first exception is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

/// CSV "iteration,best_fitness", one row per iteration 0..K, 17 significant
/// digits. Throws IoError when the file cannot be written.
void export_convergence(const RunRecord& record, const std::filesystem::path& destination);

/// Parses a file written by export_convergence back into a curve.
std::vector<double> read_convergence(const std::filesystem::path& source);

/// CSV "iteration,agent,x0,...": the per-iteration agent positions of a run
/// recorded with position logging.
void export_positions(const RunRecord& record, std::size_t dim,
                      const std::filesystem::path& destination);

nlohmann::json to_json(const TrialSummary& summary);
TrialSummary trial_summary_from_json(const nlohmann::json& doc);

inline constexpr std::string_view kReportSchema = "beetle.compare_report/1";

struct ComparisonReport {
  nlohmann::json json;
  std::string text;
};

/// Problems as rows, algorithms as column groups (ave, std, ave_time_s).
/// Every algorithm must cover the same problem set; otherwise
/// std::invalid_argument lists the difference. Empty input is rejected.
ComparisonReport compare_report(std::span<const TrialSummary> summaries);

/// Writes compare.json and compare.txt into `directory` (created if needed).
ComparisonReport compare_report(std::span<const TrialSummary> summaries,
                                const std::filesystem::path& directory);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

}  // namespace beetle
