#include "acsearch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "acsearch/parallel.hpp"

namespace acs {

Correlation parse_correlation(const std::string& name) {
  if (name == "pearson") return Correlation::kPearson;
  if (name == "kendall") return Correlation::kKendall;
  throw std::invalid_argument("unknown correlation '" + name + "' (expected pearson or kendall)");
}

std::string to_string(Correlation kind) { return kind == Correlation::kPearson ? "pearson" : "kendall"; }

namespace {

void check_pair(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("correlation needs at least two points");
}

std::int64_t tied_pairs(std::span<const double> sorted) {
  std::int64_t ties = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    ties += t * (t - 1) / 2;
    i = j;
  }
  return ties;
}

// Counts pairs i < j with v[i] > v[j], sorting v in the process.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return kWorstCorrelation;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] != xs[b] ? xs[a] < xs[b] : ys[a] < ys[b];
  });

  std::int64_t x_ties = 0, joint_ties = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && xs[order[j]] == xs[order[i]]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    x_ties += t * (t - 1) / 2;
    for (std::size_t a = i; a < j;) {
      std::size_t b = a + 1;
      while (b < j && ys[order[b]] == ys[order[a]]) ++b;
      const auto u = static_cast<std::int64_t>(b - a);
      joint_ties += u * (u - 1) / 2;
      a = b;
    }
    i = j;
  }

  std::vector<double> y_sorted(n), scratch(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted[i] = ys[order[i]];
  const std::int64_t discordant = count_inversions(y_sorted, scratch, 0, n);
  const std::int64_t y_ties = tied_pairs(y_sorted);

  const auto pairs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t numerator = pairs - x_ties - y_ties + joint_ties - 2 * discordant;
  const std::int64_t dx = pairs - x_ties;
  const std::int64_t dy = pairs - y_ties;
  if (dx == 0 || dy == 0) return kWorstCorrelation;
  return std::clamp(static_cast<double>(numerator) / std::sqrt(static_cast<double>(dx) * static_cast<double>(dy)),
                    -1.0, 1.0);
}

double correlation(Correlation kind, std::span<const double> xs, std::span<const double> ys) {
  return kind == Correlation::kPearson ? pearson(xs, ys) : kendall_tau(xs, ys);
}

std::optional<int> metric_value_checked(std::span<const AcMove> d, const Presentation& p, int cap) {
  Presentation cur = p;
  for (const AcMove& m : d) {
    apply_move_inplace(cur, m);
    if (total_length(cur) >= cap) return std::nullopt;
  }
  return total_length(cur);
}

int metric_value(std::span<const AcMove> d, const Presentation& p, int cap) {
  for (const AcMove& m : d) {
    if (!m.valid_for(p.rank())) throw std::invalid_argument("metric move " + move_code(m) + " invalid for rank");
  }
  return metric_value_checked(d, p, cap).value_or(cap);
}

namespace {

void check_training_set(const TrainingSet& t) {
  if (t.cases.size() < 2) throw std::invalid_argument("training set needs at least two cases");
  const int l0 = t.cases.front().l;
  if (std::all_of(t.cases.begin(), t.cases.end(), [l0](const FitnessCase& c) { return c.l == l0; })) {
    throw std::invalid_argument("training distances are all equal; correlation undefined");
  }
}

double fitness_unchecked(std::span<const AcMove> d, const TrainingSet& t, std::span<const double> ls,
                         Correlation kind, int cap) {
  std::vector<double> values;
  values.reserve(t.cases.size());
  for (const FitnessCase& c : t.cases) {
    const auto v = metric_value_checked(d, c.p, cap);
    if (!v) return kWorstCorrelation;
    values.push_back(*v);
  }
  return correlation(kind, values, ls);
}

std::vector<double> distances(const TrainingSet& t) {
  std::vector<double> ls;
  ls.reserve(t.cases.size());
  for (const FitnessCase& c : t.cases) ls.push_back(c.l);
  return ls;
}

}  // namespace

double metric_fitness(std::span<const AcMove> d, const TrainingSet& t, Correlation kind, int cap) {
  check_training_set(t);
  for (const AcMove& m : d) {
    if (!m.valid_for(t.cases.front().p.rank())) throw std::invalid_argument("metric move invalid for training rank");
  }
  const auto ls = distances(t);
  return fitness_unchecked(d, t, ls, kind, cap);
}

void MetricGaConfig::validate() const {
  if (population_size == 0) throw std::invalid_argument("population_size must be positive");
  if (generations < 0) throw std::invalid_argument("generations must be non-negative");
  if (tournament_size < 1) throw std::invalid_argument("tournament_size must be positive");
  if (min_length < 0 || min_length > initial_length || initial_length > max_length) {
    throw std::invalid_argument("require 0 <= min_length <= initial_length <= max_length");
  }
  if (relator_length_cap < 1) throw std::invalid_argument("relator_length_cap must be positive");
}

MetricRun evolve_metric_run(const TrainingSet& t, const MetricGaConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  check_training_set(t);
  const int rank = t.cases.front().p.rank();
  const Mutator mutator(rank, cfg.rates);
  const auto ls = distances(t);
  Rng rng(seed);

  const auto evaluate = [&](const MoveSequence& s) {
    const auto len = static_cast<int>(s.size());
    if (len < cfg.min_length || len > cfg.max_length) return kWorstCorrelation;
    return fitness_unchecked(s, t, ls, cfg.kind, cfg.relator_length_cap);
  };

  std::vector<MoveSequence> population;
  population.reserve(cfg.population_size);
  if (cfg.seed_identity) population.emplace_back();
  while (population.size() < cfg.population_size) {
    population.push_back(mutator.random_sequence(static_cast<std::size_t>(cfg.initial_length), rng));
  }
  std::vector<double> fitness(population.size());
  const auto evaluate_all = [&] {
    parallel_for(population.size(), cfg.threads, [&](std::size_t i) { fitness[i] = evaluate(population[i]); });
  };

  MetricRun run;
  const auto track_best = [&] {
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (!run.best.fitness || fitness[i] > *run.best.fitness) run.best = MetricCandidate{population[i], fitness[i]};
    }
    run.best_history.push_back(*run.best.fitness);
  };

  evaluate_all();
  track_best();
  run.initial_best = *run.best.fitness;

  std::vector<MoveSequence> next(population.size());
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      const std::size_t parent = tournament_select(population.size(), cfg.tournament_size, rng,
                                                   [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
      next[i] = population[parent];
      mutator(next[i], rng);
    }
    population.swap(next);
    evaluate_all();
    track_best();
  }
  return run;
}

MetricCandidate evolve_metric(const TrainingSet& t, const MetricGaConfig& cfg, std::uint64_t seed) {
  return evolve_metric_run(t, cfg, seed).best;
}

MetricSet learn_metric_set(const TrainingSet& t, std::size_t runs, const MetricGaConfig& cfg,
                           std::uint64_t master_seed, unsigned run_threads) {
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  check_training_set(t);
  MetricGaConfig inner = cfg;
  if (resolve_threads(run_threads) > 1) inner.threads = 1;
  MetricSet set;
  set.rank = t.cases.front().p.rank();
  set.metrics.resize(runs);
  parallel_for(runs, run_threads, [&](std::size_t r) {
    set.metrics[r] = evolve_metric(t, inner, derive_seed(master_seed, r)).sequence;
  });
  return set;
}

void MetricSet::save(std::ostream& out) const {
  out << "# metrics rank=" << rank;
  for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
  out << '\n';
  for (const MoveSequence& d : metrics) out << sequence_code(d) << '\n';
}

MetricSet MetricSet::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# metrics", 0) != 0) throw std::runtime_error("missing metrics header");
  MetricSet set;
  std::istringstream header(line.substr(9));
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "rank") {
      set.rank = std::stoi(value);
    } else {
      set.meta[key] = value;
    }
  }
  if (set.rank < 1) throw std::runtime_error("metrics header lacks a valid rank");
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    MoveSequence d = parse_sequence_code(line);
    for (const AcMove& m : d) {
      if (!m.valid_for(set.rank)) throw std::runtime_error("metric move " + move_code(m) + " invalid for rank");
    }
    set.metrics.push_back(std::move(d));
  }
  return set;
}

}  // namespace acs
