#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acsearch/ball.hpp"
#include "acsearch/ensemble.hpp"
#include "acsearch/metrics.hpp"
#include "acsearch/nsga.hpp"
#include "acsearch/variation.hpp"

namespace acs {

enum class SearchMode { kSingle, kMulti };

SearchMode parse_search_mode(const std::string& name);
std::string to_string(SearchMode mode);

struct SolverConfig {
  std::size_t population_size = 1000;
  int initial_length = 8;
  int tournament_size = 7;
  MutationRates rates;
  int min_length = 8;
  int max_length = 70;
  /// Sequences whose trace reaches this total relator length are penalised.
  int relator_length_cap = 200;
  int max_generations = 100'000;
  double time_budget_seconds = 3 * 3600.0;
  std::size_t restarts = 20;
  SearchMode mode = SearchMode::kSingle;
  /// A prefix succeeds when its class lies in this part of the ball.
  SuccessRegion success;
  /// Cancel the remaining runs of a campaign once one run solves the instance.
  bool stop_on_first_solve = false;
  /// Workers for candidate evaluation within a run.
  unsigned threads = 1;
  /// Workers for independent runs of a campaign.
  unsigned run_threads = 1;

  void validate() const;
};

/// Single objective: regression ensemble over the full metric set.
struct ScalarModel {
  MetricSet metrics;
  EnsembleWeights weights;
};

/// Multi-objective: trimmed metric set, one objective per metric.
struct ObjectiveModel {
  ObjectiveSet objectives;
};

using SearchModel = std::variant<ScalarModel, ObjectiveModel>;

enum class Penalty { kTooShort, kTooLong, kRelatorCap };
std::string to_string(Penalty p);

struct Evaluation {
  enum class Status { kOk, kPenalized, kSuccess };

  Status status = Status::kOk;
  std::optional<Penalty> penalty;
  /// Moves applied before the trace entered the success region.
  std::size_t prefix_length = 0;
  /// Lower is better. +inf when penalised, -inf on success.
  double scalar = 0.0;
  /// Lower is better. All +inf when penalised.
  std::vector<double> objectives;

  bool penalized() const { return status == Status::kPenalized; }
  bool success() const { return status == Status::kSuccess; }
};

/// Penalty rules first (length bounds, then relator-length cap along the trace),
/// success detection on every prefix, then model fitness of the final presentation.
Evaluation evaluate_candidate(const MoveSequence& s, const Presentation& instance, const SearchModel& model,
                              const Ball& ball, const SolverConfig& cfg);

/// Tournament preference over one evaluated population: scalar fitness in
/// single mode, Pareto rank then larger crowding distance in multi mode.
class SelectionOrder {
 public:
  SelectionOrder(const std::vector<Evaluation>& evals, SearchMode mode);
  bool operator()(std::size_t a, std::size_t b) const;

 private:
  const std::vector<Evaluation>* evals_;
  bool multi_;
  std::vector<int> ranks_;
  std::vector<double> crowding_;
};

enum class Outcome { kSolved, kExhausted, kTimedOut };
std::string to_string(Outcome o);

struct RunResult {
  std::string instance;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kExhausted;
  /// The successful prefix when solved.
  MoveSequence solution;
  std::size_t prefix_length = 0;
  int generations = 0;
  std::uint64_t evaluations = 0;
  double wall_seconds = 0.0;
  /// Best-so-far fitness per generation (index 0 = initial population). Scalar
  /// fitness in single mode, smallest objective sum in multi mode.
  std::vector<double> best_history;
};

RunResult run_search(const Presentation& instance, const SearchModel& model, const Ball& ball,
                     const SolverConfig& cfg, std::uint64_t seed, const std::string& instance_id = "");

/// `cfg.restarts` runs seeded by derive_seed(master_seed, run). With
/// stop_on_first_solve, results end at the lowest-indexed solved run.
std::vector<RunResult> run_campaign(const Presentation& instance, const SearchModel& model, const Ball& ball,
                                    const SolverConfig& cfg, std::uint64_t master_seed,
                                    const std::string& instance_id = "");

struct CampaignSummary {
  std::string instance;
  std::size_t runs = 0;
  std::size_t solved = 0;
  std::optional<std::size_t> shortest_prefix;
  double mean_generations = 0.0;
  std::uint64_t evaluations = 0;
  double wall_seconds = 0.0;
};

CampaignSummary summarize(const std::vector<RunResult>& runs);

/// One JSON object per line. Wall time is only written with `include_timing`,
/// so that records are byte-reproducible by default.
void write_jsonl(std::ostream& out, const std::vector<RunResult>& runs, bool include_timing = false);
void write_summary_csv(std::ostream& out, const std::vector<CampaignSummary>& summaries);

}  // namespace acs
