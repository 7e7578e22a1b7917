#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "acsearch/ball.hpp"
#include "acsearch/metrics.hpp"

namespace acs {

/// f(p) = intercept + sum_i weights[i] * d_i(p); lower estimates a shorter distance.
struct EnsembleWeights {
  std::vector<double> weights;
  double intercept = 0.0;
};

struct ObjectiveSet {
  std::vector<MoveSequence> objectives;
  /// Position of each objective in the source MetricSet.
  std::vector<std::size_t> source_indices;
};

/// One column per metric: entry r of column i is metric_value(d_i, case r).
std::vector<std::vector<double>> design_columns(const MetricSet& d, const TrainingSet& t, int cap);

/// Least-squares fit of l against the metric values with an intercept. Constant
/// columns are dropped (weight 0). Rank-deficient systems get the minimum-norm
/// weight vector.
EnsembleWeights fit_weights(const MetricSet& d, const TrainingSet& t, int cap);

double scalar_fitness(const EnsembleWeights& w, const MetricSet& d, const Presentation& p, int cap);

/// Greedy trimming: start from the metric most correlated (in absolute value)
/// with l, then repeatedly add the metric whose largest absolute correlation
/// with the already chosen ones is smallest. Ties go to the earlier metric.
ObjectiveSet trim_objectives(const MetricSet& d, const TrainingSet& t, std::size_t k, int cap,
                             Correlation kind = Correlation::kPearson);

/// Fitted model file: metric file reference, intercept, weights, and trimmed objective indices.
struct EnsembleFile {
  std::string metrics_path;
  EnsembleWeights weights;
  std::vector<std::size_t> objectives;

  void save(std::ostream& out) const;
  static EnsembleFile load(std::istream& in);
};

ObjectiveSet select_objectives(const MetricSet& d, const std::vector<std::size_t>& indices);

}  // namespace acs
