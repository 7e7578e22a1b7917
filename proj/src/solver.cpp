#include "acsearch/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

#include "acsearch/parallel.hpp"

namespace acs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int model_rank(const SearchModel& model) {
  if (const auto* s = std::get_if<ScalarModel>(&model)) return s->metrics.rank;
  const auto& objectives = std::get<ObjectiveModel>(model).objectives.objectives;
  int rank = 0;
  for (const auto& d : objectives) {
    for (const AcMove& m : d) rank = std::max(rank, static_cast<int>(std::max(m.target, m.other)) + 1);
  }
  return rank;
}

void check_model(const SearchModel& model, const Presentation& instance, const SolverConfig& cfg) {
  if (const auto* s = std::get_if<ScalarModel>(&model)) {
    if (cfg.mode != SearchMode::kSingle) throw std::invalid_argument("scalar model requires single-objective mode");
    if (s->weights.weights.size() != s->metrics.metrics.size()) {
      throw std::invalid_argument("ensemble weight count does not match metric count");
    }
    if (s->metrics.rank != instance.rank()) throw std::invalid_argument("metric rank does not match instance rank");
  } else {
    if (cfg.mode != SearchMode::kMulti) throw std::invalid_argument("objective model requires multi-objective mode");
    if (std::get<ObjectiveModel>(model).objectives.objectives.empty()) {
      throw std::invalid_argument("objective model has no objectives");
    }
    if (model_rank(model) > instance.rank()) throw std::invalid_argument("objective moves exceed instance rank");
  }
}

Evaluation penalized(Penalty why, std::size_t objective_count) {
  Evaluation e;
  e.status = Evaluation::Status::kPenalized;
  e.penalty = why;
  e.scalar = kInf;
  e.objectives.assign(objective_count, kInf);
  return e;
}

std::size_t objective_count(const SearchModel& model) {
  if (std::holds_alternative<ScalarModel>(model)) return 0;
  return std::get<ObjectiveModel>(model).objectives.objectives.size();
}

Evaluation evaluate_unchecked(const MoveSequence& s, const Presentation& instance, const SearchModel& model,
                              const Ball& ball, const SolverConfig& cfg) {
  const std::size_t n_obj = objective_count(model);
  const auto len = static_cast<int>(s.size());
  if (len < cfg.min_length) return penalized(Penalty::kTooShort, n_obj);
  if (len > cfg.max_length) return penalized(Penalty::kTooLong, n_obj);

  Evaluation e;
  Presentation cur = instance;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k > 0) {
      apply_move_inplace(cur, s[k - 1]);
      if (total_length(cur) >= cfg.relator_length_cap) return penalized(Penalty::kRelatorCap, n_obj);
    }
    if (cfg.success.depth_of(ball, cur)) {
      e.status = Evaluation::Status::kSuccess;
      e.prefix_length = k;
      e.scalar = -kInf;
      e.objectives.assign(n_obj, -kInf);
      return e;
    }
  }

  if (const auto* sm = std::get_if<ScalarModel>(&model)) {
    e.scalar = scalar_fitness(sm->weights, sm->metrics, cur, cfg.relator_length_cap);
  } else {
    const auto& objectives = std::get<ObjectiveModel>(model).objectives.objectives;
    e.objectives.reserve(objectives.size());
    double sum = 0.0;
    for (const auto& d : objectives) {
      e.objectives.push_back(metric_value(d, cur, cfg.relator_length_cap));
      sum += e.objectives.back();
    }
    e.scalar = sum;
  }
  return e;
}

}  // namespace

SearchMode parse_search_mode(const std::string& name) {
  if (name == "single") return SearchMode::kSingle;
  if (name == "multi") return SearchMode::kMulti;
  throw std::invalid_argument("unknown mode '" + name + "' (expected single or multi)");
}

std::string to_string(SearchMode mode) { return mode == SearchMode::kSingle ? "single" : "multi"; }

std::string to_string(Penalty p) {
  switch (p) {
    case Penalty::kTooShort:
      return "too_short";
    case Penalty::kTooLong:
      return "too_long";
    case Penalty::kRelatorCap:
      return "relator_cap";
  }
  return {};
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kSolved:
      return "solved";
    case Outcome::kExhausted:
      return "exhausted";
    case Outcome::kTimedOut:
      return "timed_out";
  }
  return {};
}

void SolverConfig::validate() const {
  if (population_size == 0) throw std::invalid_argument("population_size must be positive");
  if (tournament_size < 1) throw std::invalid_argument("tournament_size must be positive");
  if (min_length < 0 || min_length > initial_length || initial_length > max_length) {
    throw std::invalid_argument("require min_length <= initial_length <= max_length");
  }
  if (std::abs(rates.insert + rates.replace + rates.remove - 1.0) > 1e-9) {
    throw std::invalid_argument("mutation probabilities must sum to 1");
  }
  if (relator_length_cap < 1) throw std::invalid_argument("relator_length_cap must be positive");
  if (max_generations < 0) throw std::invalid_argument("max_generations must be non-negative");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (time_budget_seconds <= 0) throw std::invalid_argument("time budget must be positive");
}

Evaluation evaluate_candidate(const MoveSequence& s, const Presentation& instance, const SearchModel& model,
                              const Ball& ball, const SolverConfig& cfg) {
  if (instance.rank() != ball.rank()) throw std::invalid_argument("instance rank does not match ball rank");
  for (const AcMove& m : s) {
    if (!m.valid_for(instance.rank())) throw std::invalid_argument("move " + move_code(m) + " invalid for instance");
  }
  check_model(model, instance, cfg);
  return evaluate_unchecked(s, instance, model, ball, cfg);
}

SelectionOrder::SelectionOrder(const std::vector<Evaluation>& evals, SearchMode mode)
    : evals_(&evals), multi_(mode == SearchMode::kMulti) {
  if (!multi_) return;
  std::vector<ObjectiveVector> points(evals.size());
  for (std::size_t i = 0; i < evals.size(); ++i) points[i] = evals[i].objectives;
  ranks_ = nondominated_sort(points);
  crowding_ = crowding_by_front(points, ranks_);
}

bool SelectionOrder::operator()(std::size_t a, std::size_t b) const {
  if (!multi_) return (*evals_)[a].scalar < (*evals_)[b].scalar;
  if (ranks_[a] != ranks_[b]) return ranks_[a] < ranks_[b];
  return crowding_[a] > crowding_[b];
}

RunResult run_search(const Presentation& instance, const SearchModel& model, const Ball& ball,
                     const SolverConfig& cfg, std::uint64_t seed, const std::string& instance_id) {
  cfg.validate();
  check_model(model, instance, cfg);
  if (instance.rank() != ball.rank()) throw std::invalid_argument("instance rank does not match ball rank");

  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

  RunResult result;
  result.instance = instance_id;
  result.seed = seed;

  Rng rng(seed);
  const Mutator mutator(instance.rank(), cfg.rates);

  std::vector<MoveSequence> population(cfg.population_size);
  for (auto& s : population) s = mutator.random_sequence(static_cast<std::size_t>(cfg.initial_length), rng);
  std::vector<Evaluation> evals(population.size());
  double best_so_far = kInf;

  // Returns true once some candidate succeeded.
  const auto evaluate_generation = [&] {
    parallel_for(population.size(), cfg.threads,
                 [&](std::size_t i) { evals[i] = evaluate_unchecked(population[i], instance, model, ball, cfg); });
    result.evaluations += population.size();
    std::optional<std::size_t> winner;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      if (evals[i].success() && (!winner || evals[i].prefix_length < evals[*winner].prefix_length)) winner = i;
      if (!evals[i].penalized() && !evals[i].success()) best_so_far = std::min(best_so_far, evals[i].scalar);
    }
    result.best_history.push_back(best_so_far);
    if (!winner) return false;
    result.outcome = Outcome::kSolved;
    result.prefix_length = evals[*winner].prefix_length;
    const auto& s = population[*winner];
    result.solution.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(result.prefix_length));
    return true;
  };

  if (!evaluate_generation()) {
    result.outcome = Outcome::kExhausted;
    std::vector<MoveSequence> next(population.size());
    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
      if (elapsed() >= cfg.time_budget_seconds) {
        result.outcome = Outcome::kTimedOut;
        break;
      }
      const SelectionOrder better(evals, cfg.mode);
      for (std::size_t i = 0; i < population.size(); ++i) {
        next[i] = population[tournament_select(population.size(), cfg.tournament_size, rng, better)];
        mutator(next[i], rng);
      }
      population.swap(next);
      result.generations = gen;
      if (evaluate_generation()) break;
    }
  }
  result.wall_seconds = elapsed();
  return result;
}

std::vector<RunResult> run_campaign(const Presentation& instance, const SearchModel& model, const Ball& ball,
                                    const SolverConfig& cfg, std::uint64_t master_seed,
                                    const std::string& instance_id) {
  cfg.validate();
  SolverConfig inner = cfg;
  if (resolve_threads(cfg.run_threads) > 1) inner.threads = 1;

  std::vector<std::optional<RunResult>> slots(cfg.restarts);
  std::atomic<std::size_t> first_solved{cfg.restarts};
  parallel_for(cfg.restarts, cfg.run_threads, [&](std::size_t r) {
    if (cfg.stop_on_first_solve && r > first_solved.load()) return;
    RunResult res = run_search(instance, model, ball, inner, derive_seed(master_seed, r), instance_id);
    if (res.outcome == Outcome::kSolved) {
      std::size_t cur = first_solved.load();
      while (r < cur && !first_solved.compare_exchange_weak(cur, r)) {
      }
    }
    slots[r] = std::move(res);
  });

  const std::size_t end = cfg.stop_on_first_solve ? std::min(cfg.restarts, first_solved.load() + 1) : cfg.restarts;
  std::vector<RunResult> out;
  out.reserve(end);
  for (std::size_t r = 0; r < end; ++r) out.push_back(std::move(*slots[r]));
  return out;
}

CampaignSummary summarize(const std::vector<RunResult>& runs) {
  CampaignSummary s;
  s.runs = runs.size();
  if (!runs.empty()) s.instance = runs.front().instance;
  double generations = 0.0;
  for (const RunResult& r : runs) {
    if (r.outcome == Outcome::kSolved) {
      ++s.solved;
      if (!s.shortest_prefix || r.prefix_length < *s.shortest_prefix) s.shortest_prefix = r.prefix_length;
    }
    generations += r.generations;
    s.evaluations += r.evaluations;
    s.wall_seconds += r.wall_seconds;
  }
  if (!runs.empty()) s.mean_generations = generations / static_cast<double>(runs.size());
  return s;
}

void write_jsonl(std::ostream& out, const std::vector<RunResult>& runs, bool include_timing) {
  for (const RunResult& r : runs) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["outcome"] = to_string(r.outcome);
    if (r.outcome == Outcome::kSolved) {
      j["prefix_length"] = r.prefix_length;
      j["sequence"] = sequence_code(r.solution);
    } else {
      j["prefix_length"] = nullptr;
    }
    j["generations"] = r.generations;
    j["evaluations"] = r.evaluations;
    const double best = r.best_history.empty() ? kInf : r.best_history.back();
    if (std::isfinite(best)) {
      j["best_fitness"] = best;
    } else {
      j["best_fitness"] = nullptr;
    }
    if (include_timing) j["wall_time_s"] = r.wall_seconds;
    out << j.dump() << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<CampaignSummary>& summaries) {
  out << "instance,runs,solved,shortest_prefix,mean_generations,evaluations,wall_time_s\n";
  for (const CampaignSummary& s : summaries) {
    out << s.instance << ',' << s.runs << ',' << s.solved << ',';
    if (s.shortest_prefix) out << *s.shortest_prefix;
    out << ',' << std::fixed << std::setprecision(2) << s.mean_generations << std::defaultfloat << ','
        << s.evaluations << ',' << std::fixed << std::setprecision(3) << s.wall_seconds << std::defaultfloat << '\n';
  }
}

}  // namespace acs
