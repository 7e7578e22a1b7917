#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "acsearch/catalog.hpp"
#include "acsearch/proof.hpp"
#include "acsearch/text.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acs;
namespace at = acs::testing;
namespace fs = std::filesystem;

namespace {

const Ball& ball_14_12() {
  static const Ball b = [] {
    BallLimits limits;
    limits.max_total_length = 14;
    limits.max_depth = 12;
    return build_ball(limits);
  }();
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- text

TEST_CASE("parsing") {
  const Presentation ak3 = parse_presentation("<a,b| a^3B^4, abaBAB >");
  CHECK(total_length(ak3) == 13);
  CHECK(ak3 == find_instance("AK3")->presentation);
  CHECK(parse_presentation("<a,b| a^2bAB, b^2aBA >") == find_instance("T1")->presentation);
  CHECK(parse_presentation("<x0,x1|x0^2x1X0X1,x1^2x0X1X0>") == find_instance("T1")->presentation);
  CHECK(parse_presentation("<a,b|aaa,bA a>") == parse_presentation("<a,b|a^3,b>"));
  CHECK(parse_presentation("<a,b|aA,b>").relator(0).empty());
  CHECK(parse_presentation("<a,b|1,b>").relator(0).empty());
  CHECK(parse_presentation("<a,b|a^0b,b>").relator(0) == parse_word("b", 2));

  CHECK_THROWS_AS(parse_presentation("<a,b| aa >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,b|a,b,ab>"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,b|c,b>"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,b|a^,b>"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,b|a^x,b>"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,b|^2,b>"), ParseError);
  CHECK_THROWS_AS(parse_presentation("a,b|a,b"), ParseError);
  CHECK_THROWS_AS(parse_presentation("<a,a|a,b>"), ParseError);
}

TEST_CASE("formatting") {
  CHECK(format_presentation(trivial_presentation(2)) == "<a,b|a,b>");
  CHECK(format_presentation(Presentation(2, {Word{}, parse_word("b", 2)})) == "<a,b|1,b>");
  CHECK(format_word(parse_word("aaBBBa", 2), 2) == "a^2B^3a");
  CHECK(generator_name(0, 2) == "a");
  CHECK(generator_name(27, 30) == "x27");
}

TEST_CASE("property: parse inverts format") {
  for (const InstanceRecord& r : catalog()) CHECK(parse_presentation(format_presentation(r.presentation)) == r.presentation);
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = 1 + trial % 4;
    const Presentation p = at::random_presentation(rng, rank, 12);
    REQUIRE(parse_presentation(format_presentation(p)) == p);
  }
  // Beyond 26 generators the x-names take over.
  const Presentation big = trivial_presentation(28);
  CHECK(parse_presentation(format_presentation(big)) == big);
}

// ---------------------------------------------------------------- catalog

TEST_CASE("catalog") {
  CHECK(catalog().size() == 20);
  CHECK(find_instance("T56")->known_length == 25);
  CHECK_FALSE(find_instance("AK3")->known_length);
  CHECK_FALSE(find_instance("T83"));
  const std::map<std::string, int> lengths{{"T1", 6},   {"T5", 10},  {"T11", 14}, {"T13", 7},  {"T29", 21},
                                           {"T31", 10}, {"T34", 10}, {"T35", 24}, {"T39", 10}, {"T56", 25},
                                           {"T61", 14}, {"T63", 24}, {"T66", 14}, {"T67", 22}, {"T76", 10},
                                           {"T81", 19}, {"T82", 10}, {"T84", 15}, {"T85", 24}};
  for (const InstanceRecord& r : catalog()) {
    CHECK(r.presentation.rank() == 2);
    if (r.id == "AK3") continue;
    REQUIRE(lengths.count(r.id) == 1);
    CHECK(r.known_length == lengths.at(r.id));
  }
}

// ---------------------------------------------------------------- verify

TEST_CASE("golden proofs verify and print the golden lines") {
  struct Golden {
    const at::GoldenProof* fig;
    int max_length;
  };
  for (const Golden& g : {Golden{&at::t1_proof(), 6}, Golden{&at::t13_proof(), 8}}) {
    const Presentation start = find_instance(g.fig->id)->presentation;
    const MoveSequence s = parse_sequence_code(g.fig->sequence);
    const Proof proof = verify(g.fig->id, start, s, ball_14_12(), SuccessRegion{-1, g.max_length});
    REQUIRE(proof.verified);
    CHECK(proof.prefix_length == s.size());
    CHECK(replays_exactly(proof));

    const auto text = lines_of(format_proof(proof));
    REQUIRE(text.size() > s.size() + 1);
    CHECK(text[0] == g.fig->id + ":");
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(text[k + 1] == g.fig->lines[k] + " →[" + g.fig->labels[k] + "] " + g.fig->lines[k + 1]);
    }
    CHECK(text.back().rfind("# verified: prefix " + std::to_string(s.size()), 0) == 0);
    const auto& last = proof.steps.back().after;
    CHECK(canonical_form(last) == canonical_form(trivial_presentation(2)));
  }
}

TEST_CASE("unverified proofs") {
  const Presentation t1 = find_instance("T1")->presentation;
  BallLimits limits;
  limits.max_depth = 0;
  const Ball root_only = build_ball(limits);
  const Proof none = verify("T1", t1, {}, root_only);
  CHECK_FALSE(none.verified);
  CHECK(none.failure.find("enters the ball") != std::string::npos);
  CHECK(format_proof(none).find("# unverified") != std::string::npos);

  const Proof bad = verify("T1", t1, {AcMove::invert(3)}, ball_14_12());
  CHECK_FALSE(bad.verified);
  CHECK(bad.failure.find("invalid") != std::string::npos);

  // Trivial presentations verify with nothing to do.
  const Proof trivial = verify("", trivial_presentation(2), {}, root_only);
  CHECK(trivial.verified);
  CHECK(trivial.steps.empty());
}

TEST_CASE("property: every verified proof replays exactly") {
  const Ball& b = ball_14_12();
  const auto moves = enumerate_moves(2);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
  int verified = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // Start inside the ball and scramble outwards.
    const Presentation start = b.presentation(rng() % b.size());
    MoveSequence s(rng() % 6);
    for (AcMove& m : s) m = moves[pick(rng)];
    const Proof p = verify("", start, s, b);
    if (!p.verified) continue;
    ++verified;
    REQUIRE(replays_exactly(p));
    const Presentation end = p.steps.empty() ? start : p.steps.back().after;
    REQUIRE(canonical_form(end) == canonical_form(trivial_presentation(2)));
  }
  CHECK(verified > 200);
}

// ---------------------------------------------------------------- command line

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("acsearch_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }

  int run(const std::string& args) const {
    const std::string cmd = "cd \"" + dir.string() + "\" && \"" ACSEARCH_CLI "\" -q " + args + " >out.txt 2>err.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string file(const std::string& name) const { return slurp(dir / name); }
};

}  // namespace

TEST_CASE("command line pipeline") {
  const Workdir w;
  REQUIRE(w.run("ball --max-length 10 --max-depth 5 -o ball.tsv") == 0);
  const auto ball_lines = lines_of(w.file("ball.tsv"));
  REQUIRE(ball_lines.size() > 100);

  REQUIRE(w.run("sample --ball ball.tsv -n 60 --seed 3 -o cases.tsv") == 0);
  REQUIRE(w.run("sample --ball ball.tsv -n 60 --seed 3 -o again.tsv") == 0);
  CHECK(w.file("cases.tsv") == w.file("again.tsv"));
  CHECK(lines_of(w.file("cases.tsv")).size() == 60);
  CHECK(w.file("cases.tsv").find('\t') != std::string::npos);

  REQUIRE(w.run("learn --cases cases.tsv --runs 3 --population 20 --generations 4 --seed 4 -o models/metrics.txt") == 0);
  REQUIRE(w.run("fit --cases cases.tsv --metrics models/metrics.txt --objectives 2 -o models/ensemble.txt") == 0);
  CHECK(w.file("models/ensemble.txt").find("metrics metrics.txt") != std::string::npos);

  const std::string solve = "solve --ball ball.tsv --ensemble models/ensemble.txt -i T1 -i \"<a,b|b,ab^2>\" "
                            "--population 30 --generations 10 --restarts 2 --seed 5 ";
  for (const char* mode : {"single", "multi"}) {
    REQUIRE(w.run(solve + "--mode " + mode + " --jsonl a.jsonl --csv a.csv") == 0);
    REQUIRE(w.run(solve + "--mode " + mode + " --jsonl b.jsonl --csv b.csv --run-threads 2") == 0);
    CHECK(w.file("a.jsonl") == w.file("b.jsonl"));
    CHECK(lines_of(w.file("a.jsonl")).size() == 4);
    CHECK(lines_of(w.file("a.csv")).size() == 3);
  }
  REQUIRE(w.run(solve + "--timings --jsonl t.jsonl --csv t.csv") == 0);
  CHECK(w.file("t.jsonl").find("wall_time_s") != std::string::npos);

  for (const auto& entry : fs::recursive_directory_iterator(w.dir)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("command line verify, catalog and config") {
  const Workdir w;
  {
    std::ofstream seq(w.dir / "t1.seq");
    seq << "# golden T1 sequence\nC1+0 M1.0 C0-1\nC1+0 I1 M0.1\n";
  }
  CHECK(w.run("verify -i T1 --sequence-file t1.seq --max-length 12 --max-depth 6 -o proof.txt") == 0);
  const auto proof = lines_of(w.file("proof.txt"));
  REQUIRE(proof.size() > 7);
  for (std::size_t k = 0; k < 6; ++k) CHECK(proof[k + 1].rfind(at::t1_proof().lines[k] + " →[", 0) == 0);
  CHECK(w.run("verify -i T1 --max-depth 0") == 1);
  CHECK(w.file("out.txt").find("# unverified") != std::string::npos);
  CHECK(w.run("verify -i NOPE") == 2);
  CHECK(w.run("verify") != 0);

  REQUIRE(w.run("catalog") == 0);
  const auto rows = lines_of(w.file("out.txt"));
  CHECK(rows.size() == 20);
  CHECK(rows[0] == "AK3\t-\t<a,b|a^3B^4,abaBAB>");

  {
    std::ofstream ini(w.dir / "run.ini");
    ini << "[ball]\nmax-length=8\nmax-depth=3\nout=small.tsv\n";
  }
  REQUIRE(w.run("--config run.ini ball") == 0);
  REQUIRE(w.run("--config run.ini ball --max-depth 4 -o deeper.tsv") == 0);
  CHECK(lines_of(w.file("small.tsv")).size() < lines_of(w.file("deeper.tsv")).size());
}
