#include "acsearch/ensemble.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "acsearch/log.hpp"

namespace acs {

std::vector<std::vector<double>> design_columns(const MetricSet& d, const TrainingSet& t, int cap) {
  std::vector<std::vector<double>> cols(d.metrics.size(), std::vector<double>(t.cases.size()));
  for (std::size_t i = 0; i < d.metrics.size(); ++i) {
    for (std::size_t r = 0; r < t.cases.size(); ++r) cols[i][r] = metric_value(d.metrics[i], t.cases[r].p, cap);
  }
  return cols;
}

EnsembleWeights fit_weights(const MetricSet& d, const TrainingSet& t, int cap) {
  if (d.metrics.empty()) throw std::invalid_argument("cannot fit an ensemble without metrics");
  if (t.cases.empty()) throw std::invalid_argument("cannot fit an ensemble on an empty training set");
  const auto cols = design_columns(d, t, cap);
  const auto n = static_cast<Eigen::Index>(t.cases.size());

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const bool constant = std::all_of(cols[i].begin(), cols[i].end(), [&](double v) { return v == cols[i][0]; });
    if (constant) {
      log::warn("metric " + std::to_string(i) + " is constant over the training set; dropped from regression");
    } else {
      kept.push_back(i);
    }
  }

  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) y(r) = t.cases[static_cast<std::size_t>(r)].l;
  const double y_mean = y.mean();

  EnsembleWeights out;
  out.weights.assign(d.metrics.size(), 0.0);
  out.intercept = y_mean;
  if (kept.empty()) return out;

  // Centering absorbs the intercept; the minimum-norm solution then applies to the weights only.
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(kept.size()));
  Eigen::VectorXd x_mean(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const auto cc = static_cast<Eigen::Index>(c);
    for (Eigen::Index r = 0; r < n; ++r) x(r, cc) = cols[kept[c]][static_cast<std::size_t>(r)];
    x_mean(cc) = x.col(cc).mean();
    x.col(cc).array() -= x_mean(cc);
  }
  const Eigen::VectorXd w = x.completeOrthogonalDecomposition().solve((y.array() - y_mean).matrix());
  for (std::size_t c = 0; c < kept.size(); ++c) out.weights[kept[c]] = w(static_cast<Eigen::Index>(c));
  out.intercept = y_mean - w.dot(x_mean);
  return out;
}

double scalar_fitness(const EnsembleWeights& w, const MetricSet& d, const Presentation& p, int cap) {
  if (w.weights.size() != d.metrics.size()) throw std::invalid_argument("weight count does not match metric count");
  double f = w.intercept;
  for (std::size_t i = 0; i < d.metrics.size(); ++i) {
    if (w.weights[i] != 0.0) f += w.weights[i] * metric_value(d.metrics[i], p, cap);
  }
  return f;
}

ObjectiveSet trim_objectives(const MetricSet& d, const TrainingSet& t, std::size_t k, int cap, Correlation kind) {
  if (d.metrics.empty()) throw std::invalid_argument("cannot trim an empty metric set");
  if (k == 0) throw std::invalid_argument("objective count must be positive");
  const auto cols = design_columns(d, t, cap);
  std::vector<double> ls;
  for (const FitnessCase& c : t.cases) ls.push_back(c.l);

  const std::size_t m = d.metrics.size();
  const auto abs_corr = [&](const std::vector<double>& a, const std::vector<double>& b, double undefined) {
    if (a.size() < 2) return undefined;
    const double r = correlation(kind, a, b);
    return r == kWorstCorrelation ? undefined : std::abs(r);
  };

  ObjectiveSet out;
  std::vector<bool> chosen(m, false);
  const auto choose = [&](std::size_t i) {
    chosen[i] = true;
    out.objectives.push_back(d.metrics[i]);
    out.source_indices.push_back(i);
  };

  std::size_t seed = 0;
  double seed_score = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double s = abs_corr(cols[i], ls, -0.5);
    if (s > seed_score) {
      seed_score = s;
      seed = i;
    }
  }
  choose(seed);

  const std::size_t target = std::min(k, m);
  while (out.objectives.size() < target) {
    const auto duplicate = [&](std::size_t i) {
      return std::any_of(out.objectives.begin(), out.objectives.end(),
                         [&](const MoveSequence& s) { return s == d.metrics[i]; });
    };
    // Sequences identical to a chosen one are only taken once nothing else remains.
    bool fresh_left = false;
    for (std::size_t i = 0; i < m && !fresh_left; ++i) fresh_left = !chosen[i] && !duplicate(i);
    std::size_t best = m;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (chosen[i] || (fresh_left && duplicate(i))) continue;
      double worst = 0.0;
      for (std::size_t j : out.source_indices) worst = std::max(worst, abs_corr(cols[i], cols[j], 1.0));
      if (worst < best_score) {
        best_score = worst;
        best = i;
      }
    }
    choose(best);
  }
  return out;
}

ObjectiveSet select_objectives(const MetricSet& d, const std::vector<std::size_t>& indices) {
  ObjectiveSet out;
  for (std::size_t i : indices) {
    if (i >= d.metrics.size()) throw std::out_of_range("objective index " + std::to_string(i) + " out of range");
    out.objectives.push_back(d.metrics[i]);
    out.source_indices.push_back(i);
  }
  return out;
}

void EnsembleFile::save(std::ostream& out) const {
  out << "# ensemble\n";
  out << "metrics " << metrics_path << '\n';
  out << std::setprecision(17) << "intercept " << weights.intercept << '\n';
  out << "weights";
  for (double w : weights.weights) out << ' ' << w;
  out << "\nobjectives";
  for (std::size_t i : objectives) out << ' ' << i;
  out << '\n';
}

EnsembleFile EnsembleFile::load(std::istream& in) {
  EnsembleFile f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string key;
    row >> key;
    if (key == "metrics") {
      std::getline(row >> std::ws, f.metrics_path);
    } else if (key == "intercept") {
      row >> f.weights.intercept;
    } else if (key == "weights") {
      double w;
      while (row >> w) f.weights.weights.push_back(w);
    } else if (key == "objectives") {
      std::size_t i;
      while (row >> i) f.objectives.push_back(i);
    } else {
      throw std::runtime_error("unknown ensemble field '" + key + "'");
    }
  }
  return f;
}

}  // namespace acs
