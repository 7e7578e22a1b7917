#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acsearch/ball.hpp"
#include "acsearch/catalog.hpp"
#include "acsearch/ensemble.hpp"
#include "acsearch/log.hpp"
#include "acsearch/metrics.hpp"
#include "acsearch/parallel.hpp"
#include "acsearch/proof.hpp"
#include "acsearch/solver.hpp"
#include "acsearch/text.hpp"

namespace fs = std::filesystem;
using namespace acs;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

// Write to a sibling temporary, then rename over the target.
template <class Fn>
void write_atomic(const std::string& path, Fn&& fill) {
  if (path == "-") {
    fill(std::cout);
    std::cout.flush();
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    fill(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
  log::info("wrote " + path);
}

Ball load_ball(const std::string& path) {
  auto in = open_input(path);
  return Ball::load(in);
}

TrainingSet load_cases(const std::string& path) {
  auto in = open_input(path);
  return load_training_set(in);
}

MetricSet load_metrics(const std::string& path) {
  auto in = open_input(path);
  return MetricSet::load(in);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Move codes separated by whitespace; '#' starts a comment.
MoveSequence read_sequence_file(const std::string& path) {
  auto in = open_input(path);
  std::string line, joined;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (!joined.empty()) joined += ' ';
    joined += line;
  }
  return parse_sequence_code(joined.empty() ? "-" : joined);
}

struct Instance {
  std::string id;
  Presentation p;
};

// Lines are "id <TAB> presentation" or a bare presentation.
std::vector<Instance> read_instances_file(const std::string& path) {
  auto in = open_input(path);
  std::vector<Instance> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      out.push_back({"I" + std::to_string(out.size() + 1), parse_presentation(line)});
    } else {
      out.push_back({trim(line.substr(0, tab)), parse_presentation(line.substr(tab + 1))});
    }
  }
  return out;
}

Instance resolve_instance(const std::string& spec) {
  if (auto rec = find_instance(spec)) return {rec->id, rec->presentation};
  if (spec.find('<') != std::string::npos) return {"custom", parse_presentation(spec)};
  throw std::runtime_error("unknown instance " + spec);
}

struct BallArgs {
  int rank = 2;
  int max_length = 12;
  int max_depth = 6;
  std::size_t max_members = BallLimits{}.max_members;
  unsigned threads = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("--rank", rank, "Number of generators")->check(CLI::PositiveNumber);
    cmd->add_option("--max-length", max_length, "Total relator length cap")->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", max_depth, "BFS depth")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-members", max_members, "Abort past this many members");
    cmd->add_option("--threads", threads, "Expansion workers (0 = all cores)");
  }

  Ball build() const {
    BallLimits limits;
    limits.rank = rank;
    limits.max_total_length = max_length;
    limits.max_depth = max_depth;
    limits.max_members = max_members;
    limits.threads = threads;
    return build_ball(limits);
  }
};

void add_region(CLI::App* cmd, SuccessRegion& region) {
  cmd->add_option("--success-depth", region.max_depth, "Success only at ball depth <= this (-1 = any)");
  cmd->add_option("--success-length", region.max_total_length, "Success only at total length <= this (-1 = any)");
}

std::string census_line(const Ball& b) {
  std::ostringstream s;
  s << b.size() << " members; per depth:";
  for (std::size_t n : b.depth_census()) s << ' ' << n;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for Andrews-Curtis trivializations of balanced presentations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; [section] names a subcommand");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress messages");

  // ball
  BallArgs ball_args;
  std::string ball_out = "ball.tsv";
  CLI::App* ball_cmd = app.add_subcommand("ball", "Build the ball around the trivial presentation");
  ball_args.add(ball_cmd);
  ball_cmd->add_option("-o,--out", ball_out, "Ball file");

  // sample
  std::string sample_ball, sample_out = "cases.tsv";
  std::size_t sample_count = 500;
  std::uint64_t sample_seed = 1;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw a depth-labelled training set from a ball");
  sample_cmd->add_option("--ball", sample_ball, "Ball file")->required();
  sample_cmd->add_option("-n,--count", sample_count, "Number of cases");
  sample_cmd->add_option("--seed", sample_seed, "Random seed");
  sample_cmd->add_option("-o,--out", sample_out, "Training set file");

  // learn
  std::string learn_cases, learn_out = "metrics.txt", learn_corr = "pearson";
  std::size_t learn_runs = 10;
  unsigned learn_run_threads = 1;
  std::uint64_t learn_seed = 1;
  bool no_identity = false;
  MetricGaConfig ga;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Evolve a metric set against a training set");
  learn_cmd->add_option("--cases", learn_cases, "Training set file")->required();
  learn_cmd->add_option("--runs", learn_runs, "Independent GA runs (metrics learned)");
  learn_cmd->add_option("--population", ga.population_size, "Population size");
  learn_cmd->add_option("--generations", ga.generations, "Generations per run");
  learn_cmd->add_option("--max-length", ga.max_length, "Longest metric sequence");
  learn_cmd->add_option("--correlation", learn_corr, "pearson or kendall");
  learn_cmd->add_flag("--no-identity-seed", no_identity, "Do not seed the empty metric");
  learn_cmd->add_option("--threads", ga.threads, "Evaluation workers per run");
  learn_cmd->add_option("--run-threads", learn_run_threads, "Concurrent runs");
  learn_cmd->add_option("--seed", learn_seed, "Master seed");
  learn_cmd->add_option("-o,--out", learn_out, "Metric set file");

  // fit
  std::string fit_cases, fit_metrics, fit_out = "ensemble.txt", fit_corr = "pearson";
  std::size_t fit_objectives = 5;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit ensemble weights and trim objectives");
  fit_cmd->add_option("--cases", fit_cases, "Training set file")->required();
  fit_cmd->add_option("--metrics", fit_metrics, "Metric set file")->required();
  fit_cmd->add_option("--objectives", fit_objectives, "Objectives kept for multi-objective search");
  fit_cmd->add_option("--correlation", fit_corr, "Correlation used for trimming");
  fit_cmd->add_option("-o,--out", fit_out, "Ensemble file");

  // solve
  std::string solve_ball, solve_ensemble, solve_mode = "single", solve_jsonl = "runs.jsonl", solve_csv = "summary.csv";
  std::string solve_instances_file;
  std::vector<std::string> solve_instances;
  std::uint64_t solve_seed = 1;
  bool solve_timings = false;
  SolverConfig scfg;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run search campaigns on instances");
  solve_cmd->add_option("--ball", solve_ball, "Ball file")->required();
  solve_cmd->add_option("--ensemble", solve_ensemble, "Ensemble file from fit")->required();
  solve_cmd->add_option("-i,--instance", solve_instances, "Catalog id, presentation text, or 'all'");
  solve_cmd->add_option("--instances-file", solve_instances_file, "Lines of 'id<TAB>presentation'");
  solve_cmd->add_option("--mode", solve_mode, "single or multi")->check(CLI::IsMember({"single", "multi"}));
  solve_cmd->add_option("--population", scfg.population_size, "Population size");
  solve_cmd->add_option("--generations", scfg.max_generations, "Generation limit per run");
  solve_cmd->add_option("--restarts", scfg.restarts, "Runs per instance");
  solve_cmd->add_option("--time-budget", scfg.time_budget_seconds, "Seconds per run");
  solve_cmd->add_option("--tournament", scfg.tournament_size, "Tournament size");
  solve_cmd->add_option("--relator-cap", scfg.relator_length_cap, "Total length that penalises a trace");
  add_region(solve_cmd, scfg.success);
  solve_cmd->add_flag("--stop-on-first", scfg.stop_on_first_solve, "Stop a campaign at its first solved run");
  solve_cmd->add_option("--threads", scfg.threads, "Evaluation workers per run");
  solve_cmd->add_option("--run-threads", scfg.run_threads, "Concurrent runs");
  solve_cmd->add_option("--seed", solve_seed, "Master seed");
  solve_cmd->add_flag("--timings", solve_timings, "Add wall time to JSONL records");
  solve_cmd->add_option("--jsonl", solve_jsonl, "Per-run records");
  solve_cmd->add_option("--csv", solve_csv, "Per-instance summary");

  // verify
  std::string verify_instance, verify_sequence_file, verify_sequence, verify_ball, verify_out = "-";
  BallArgs verify_ball_args;
  SuccessRegion verify_region;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Replay a move sequence and print the proof");
  verify_cmd->add_option("-i,--instance", verify_instance, "Catalog id or presentation text")->required();
  auto* seq_file_opt = verify_cmd->add_option("--sequence-file", verify_sequence_file, "File of move codes");
  auto* seq_opt = verify_cmd->add_option("-s,--sequence", verify_sequence, "Move codes, e.g. \"C1+0 M1.0\"");
  seq_file_opt->excludes(seq_opt);
  verify_cmd->add_option("--ball", verify_ball, "Ball file (otherwise built from the limits)");
  verify_ball_args.add(verify_cmd);
  add_region(verify_cmd, verify_region);
  verify_cmd->add_option("-o,--out", verify_out, "Proof text");

  // catalog
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "List the embedded instances");

  CLI11_PARSE(app, argc, argv);
  if (quiet) log::threshold() = log::Level::kQuiet;

  try {
    if (*ball_cmd) {
      const Ball b = ball_args.build();
      log::info(census_line(b));
      write_atomic(ball_out, [&](std::ostream& out) { b.save(out); });
    } else if (*sample_cmd) {
      const Ball b = load_ball(sample_ball);
      const TrainingSet t = sample_cases(b, sample_count, sample_seed);
      write_atomic(sample_out, [&](std::ostream& out) { save_training_set(t, out); });
    } else if (*learn_cmd) {
      const TrainingSet t = load_cases(learn_cases);
      ga.kind = parse_correlation(learn_corr);
      ga.seed_identity = !no_identity;
      MetricSet d = learn_metric_set(t, learn_runs, ga, learn_seed, learn_run_threads);
      d.meta["cases"] = learn_cases;
      d.meta["seed"] = std::to_string(learn_seed);
      d.meta["correlation"] = learn_corr;
      for (std::size_t i = 0; i < d.metrics.size(); ++i) {
        log::info("metric " + std::to_string(i) + ": " + sequence_code(d.metrics[i]) + " fitness " +
                  std::to_string(metric_fitness(d.metrics[i], t, ga.kind, ga.relator_length_cap)));
      }
      write_atomic(learn_out, [&](std::ostream& out) { d.save(out); });
    } else if (*fit_cmd) {
      const TrainingSet t = load_cases(fit_cases);
      const MetricSet d = load_metrics(fit_metrics);
      EnsembleFile f;
      const fs::path out_dir = fs::path(fit_out).parent_path();
      f.metrics_path = fs::relative(fs::absolute(fit_metrics), fs::absolute(out_dir.empty() ? "." : out_dir)).string();
      f.weights = fit_weights(d, t, 200);
      f.objectives = trim_objectives(d, t, fit_objectives, 200, parse_correlation(fit_corr)).source_indices;
      write_atomic(fit_out, [&](std::ostream& out) { f.save(out); });
    } else if (*solve_cmd) {
      scfg.mode = parse_search_mode(solve_mode);
      const Ball b = load_ball(solve_ball);
      auto ens_in = open_input(solve_ensemble);
      const EnsembleFile f = EnsembleFile::load(ens_in);
      fs::path metrics_path(f.metrics_path);
      if (metrics_path.is_relative()) metrics_path = fs::path(solve_ensemble).parent_path() / metrics_path;
      const MetricSet d = load_metrics(metrics_path.string());
      SearchModel model;
      if (scfg.mode == SearchMode::kSingle) {
        model = ScalarModel{d, f.weights};
      } else {
        model = ObjectiveModel{select_objectives(d, f.objectives)};
      }

      std::vector<Instance> instances;
      for (const std::string& s : solve_instances) {
        if (s == "all") {
          for (const InstanceRecord& r : catalog()) instances.push_back({r.id, r.presentation});
        } else {
          instances.push_back(resolve_instance(s));
        }
      }
      if (!solve_instances_file.empty()) {
        for (Instance& i : read_instances_file(solve_instances_file)) instances.push_back(std::move(i));
      }
      if (instances.empty()) throw std::runtime_error("no instances given (use --instance or --instances-file)");

      std::vector<RunResult> all;
      std::vector<CampaignSummary> summaries;
      for (std::size_t k = 0; k < instances.size(); ++k) {
        const Instance& inst = instances[k];
        log::info("solving " + inst.id + " " + format_presentation(inst.p));
        auto runs = run_campaign(inst.p, model, b, scfg, derive_seed(solve_seed, k), inst.id);
        summaries.push_back(summarize(runs));
        log::info(inst.id + ": " + std::to_string(summaries.back().solved) + "/" + std::to_string(runs.size()) +
                  " runs solved");
        all.insert(all.end(), std::make_move_iterator(runs.begin()), std::make_move_iterator(runs.end()));
      }
      write_atomic(solve_jsonl, [&](std::ostream& out) { write_jsonl(out, all, solve_timings); });
      write_atomic(solve_csv, [&](std::ostream& out) { write_summary_csv(out, summaries); });
    } else if (*verify_cmd) {
      const Instance inst = resolve_instance(verify_instance);
      const MoveSequence s = verify_sequence_file.empty() ? parse_sequence_code(verify_sequence.empty() ? "-" : verify_sequence)
                                                          : read_sequence_file(verify_sequence_file);
      const Ball b = verify_ball.empty() ? verify_ball_args.build() : load_ball(verify_ball);
      const Proof proof = verify(inst.id, inst.p, s, b, verify_region);
      write_atomic(verify_out, [&](std::ostream& out) { out << format_proof(proof); });
      return proof.verified ? 0 : 1;
    } else if (*catalog_cmd) {
      for (const InstanceRecord& r : catalog()) {
        std::cout << r.id << '\t' << (r.known_length ? std::to_string(*r.known_length) : "-") << '\t'
                  << format_presentation(r.presentation) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
