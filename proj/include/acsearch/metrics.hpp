#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acsearch/ball.hpp"
#include "acsearch/presentation.hpp"
#include "acsearch/variation.hpp"

namespace acs {

/// Fitness of degenerate or truncated metrics; strictly below any correlation.
inline constexpr double kWorstCorrelation = -2.0;

enum class Correlation { kPearson, kKendall };

Correlation parse_correlation(const std::string& name);
std::string to_string(Correlation kind);

/// Pearson's r. Returns kWorstCorrelation when either variance is zero.
/// Throws std::invalid_argument on length mismatch or fewer than two points.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Kendall's tau-b (tie corrected), O(n log n). Returns kWorstCorrelation when
/// either side is entirely tied.
double kendall_tau(std::span<const double> xs, std::span<const double> ys);

double correlation(Correlation kind, std::span<const double> xs, std::span<const double> ys);

/// Total relator length after applying `d` to `p`, or `cap` when some step
/// reaches the relator-length cap.
int metric_value(std::span<const AcMove> d, const Presentation& p, int cap);

/// Same as metric_value, reporting truncation separately.
std::optional<int> metric_value_checked(std::span<const AcMove> d, const Presentation& p, int cap);

/// Correlation between d(p) and l over the training set; kWorstCorrelation if any
/// case truncates or the values are constant. Throws on an empty training set or
/// constant distances.
double metric_fitness(std::span<const AcMove> d, const TrainingSet& t, Correlation kind, int cap);

struct MetricCandidate {
  MoveSequence sequence;
  std::optional<double> fitness;
};

struct MetricGaConfig {
  std::size_t population_size = 100;
  int generations = 200;
  int initial_length = 8;
  int tournament_size = 7;
  MutationRates rates;
  int min_length = 0;
  int max_length = 70;
  int relator_length_cap = 200;
  Correlation kind = Correlation::kPearson;
  /// Seed the initial population with the empty (identity) metric.
  bool seed_identity = true;
  unsigned threads = 1;

  void validate() const;
};

struct MetricRun {
  MetricCandidate best;
  /// Best-so-far fitness after each generation, index 0 = initial population.
  std::vector<double> best_history;
  double initial_best = kWorstCorrelation;
};

/// Generational GA with tournament selection and mutation-only variation;
/// returns the best candidate seen in any generation.
MetricRun evolve_metric_run(const TrainingSet& t, const MetricGaConfig& cfg, std::uint64_t seed);
MetricCandidate evolve_metric(const TrainingSet& t, const MetricGaConfig& cfg, std::uint64_t seed);

struct MetricSet {
  int rank = 0;
  std::vector<MoveSequence> metrics;
  /// Free-form provenance written to the file header (e.g. ball limits).
  std::map<std::string, std::string> meta;

  void save(std::ostream& out) const;
  static MetricSet load(std::istream& in);
};

/// `runs` independent evolve_metric runs seeded by derive_seed(master_seed, run).
MetricSet learn_metric_set(const TrainingSet& t, std::size_t runs, const MetricGaConfig& cfg,
                           std::uint64_t master_seed, unsigned run_threads = 1);

}  // namespace acs
