#include <set>
#include <sstream>

#include "acsearch/ball.hpp"
#include "acsearch/catalog.hpp"
#include "acsearch/text.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acs;
namespace at = acs::testing;

namespace {

Ball make_ball(int cap, int depth, int rank = 2, unsigned threads = 1) {
  BallLimits limits;
  limits.rank = rank;
  limits.max_total_length = cap;
  limits.max_depth = depth;
  limits.threads = threads;
  return build_ball(limits);
}

const Ball& ball_12_6() {
  static const Ball b = make_ball(12, 6);
  return b;
}

}  // namespace

TEST_CASE("trivial presentation is the depth-0 root") {
  const Ball b = make_ball(4, 2);
  const auto idx = b.find(trivial_presentation(2));
  REQUIRE(idx);
  CHECK(b.member(*idx).depth == 0);
  CHECK(b.member(*idx).parent == -1);
  CHECK(make_ball(4, 0).size() == 1);
}

TEST_CASE("(2,4,1) ball equals the canonical neighbours of the trivial presentation") {
  std::set<std::string> oracle{format_presentation(trivial_presentation(2))};
  for (const AcMove& m : enumerate_moves(2)) {
    const Presentation q = canonical_form(apply_move(trivial_presentation(2), m));
    if (total_length(q) <= 4) oracle.insert(format_presentation(q));
  }
  const Ball b = make_ball(4, 1);
  CHECK(b.size() == oracle.size());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(oracle.count(format_presentation(b.presentation(i))) == 1);
}

TEST_CASE("ball matches an independent BFS with reversed move order") {
  for (auto [cap, depth] : {std::pair{8, 5}, {10, 4}, {12, 6}}) {
    const Ball b = make_ball(cap, depth);
    const auto oracle = at::oracle_bfs(2, cap, depth);
    REQUIRE(b.size() == oracle.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto it = oracle.find(format_presentation(b.presentation(i)));
      REQUIRE(it != oracle.end());
      REQUIRE(it->second == b.member(i).depth);
    }
  }
  const Ball r3 = make_ball(5, 3, 3);
  CHECK(r3.size() == at::oracle_bfs(3, 5, 3).size());
}

TEST_CASE("ball invariants: limits, canonical keys and parent links") {
  const Ball& b = ball_12_6();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Ball::Member& m = b.member(i);
    const Presentation p = b.presentation(i);
    REQUIRE(m.depth <= 6);
    REQUIRE(total_length(p) <= 12);
    REQUIRE(canonical_form(p) == p);
    if (m.parent < 0) continue;
    const Ball::Member& parent = b.member(static_cast<std::size_t>(m.parent));
    REQUIRE(parent.depth + 1 == m.depth);
    REQUIRE(canonical_form(apply_move(b.presentation(static_cast<std::size_t>(m.parent)), m.move)) == p);
  }
}

TEST_CASE("parallel expansion gives the same members and depths") {
  const Ball& seq = ball_12_6();
  const Ball par = make_ball(12, 6, 2, 4);
  REQUIRE(par.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto j = par.find_key(seq.member(i).key);
    REQUIRE(j);
    REQUIRE(par.member(*j).depth == seq.member(i).depth);
  }
}

TEST_CASE("property: enlarging limits never removes members or deepens them") {
  const Ball small = make_ball(10, 4);
  for (const Ball& big : {make_ball(12, 4), make_ball(10, 6), ball_12_6()}) {
    for (std::size_t i = 0; i < small.size(); ++i) {
      const auto j = big.find_key(small.member(i).key);
      REQUIRE(j);
      REQUIRE(big.member(*j).depth <= small.member(i).depth);
    }
  }
}

TEST_CASE("lookup paths replay to the trivial class") {
  const Ball& b = ball_12_6();
  const Presentation trivial_class = canonical_form(trivial_presentation(2));
  const auto root = lookup(b, trivial_presentation(2));
  REQUIRE(root);
  CHECK(root->depth == 0);
  CHECK(root->path.empty());

  std::mt19937_64 rng(12);
  for (std::size_t i = 0; i < b.size(); i += 7) {
    // Query a scrambled representative: relators swapped, rotated and inverted.
    Presentation p = b.presentation(i);
    p = Presentation(2, {invert_word(p.relator(1)), p.relator(0)});
    if (!has_cyclic_cancellation(p.relator(1)) && p.relator(1).size() > 1) {
      p.set_relator(1, Word(rotate_letters(p.relator(1), rng() % p.relator(1).size())));
    }
    const auto path = lookup(b, p);
    REQUIRE(path);
    REQUIRE(path->depth == b.member(i).depth);
    const Trace t = apply_sequence(p, path->path, 1000);
    REQUIRE(canonical_form(t.final()) == trivial_class);
  }
  // Depth-1 members need a single move.
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.member(i).depth != 1) continue;
    const auto path = lookup(b, b.presentation(i));
    REQUIRE(path);
    CHECK(canonical_form(apply_sequence(b.presentation(i), path->path, 1000).final()) == trivial_class);
  }
}

TEST_CASE("AK3 is absent") {
  const Ball& b = ball_12_6();
  const Presentation ak3 = find_instance("AK3")->presentation;
  CHECK_FALSE(b.contains(ak3));
  CHECK_FALSE(lookup(b, ak3));
  CHECK_FALSE(b.contains(trivial_presentation(3)));
}

TEST_CASE("success regions bound depth and length") {
  const Ball& b = ball_12_6();
  const Presentation p = parse_presentation("<a,b|B,aBA^2>");
  CHECK(SuccessRegion{}.depth_of(b, p) == 2);
  CHECK(SuccessRegion{2, -1}.depth_of(b, p) == 2);
  CHECK_FALSE(SuccessRegion{1, -1}.depth_of(b, p));
  CHECK(SuccessRegion{-1, 5}.depth_of(b, p) == 2);
  CHECK_FALSE(SuccessRegion{-1, 4}.depth_of(b, p));
}

TEST_CASE("sampling is stratified, deterministic and labelled by depth") {
  const Ball& b = ball_12_6();
  const TrainingSet t1 = sample_cases(b, 300, 5);
  const TrainingSet t2 = sample_cases(b, 300, 5);
  REQUIRE(t1.cases.size() == 300);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < t1.cases.size(); ++i) {
    CHECK(t1.cases[i].p == t2.cases[i].p);
    CHECK(t1.cases[i].l == t2.cases[i].l);
    const auto idx = b.find(t1.cases[i].p);
    REQUIRE(idx);
    CHECK(b.member(*idx).depth == t1.cases[i].l);
    keys.insert(b.member(*idx).key);
  }
  CHECK(keys.size() == 300);  // without replacement

  const auto census = b.depth_census();
  const TrainingSet few = sample_cases(b, census.size(), 6);
  std::set<int> depths;
  for (const FitnessCase& c : few.cases) depths.insert(c.l);
  CHECK(depths.size() == census.size());

  // Depth 0 holds one member, so later passes skip it.
  std::vector<int> hist(census.size());
  for (const FitnessCase& c : t1.cases) ++hist[static_cast<std::size_t>(c.l)];
  CHECK(hist[0] == 1);
  CHECK(hist[6] >= 45);

  CHECK(sample_cases(b, 300, 7).cases[0].p != t1.cases[0].p);
  CHECK_THROWS_AS(sample_cases(b, b.size() + 1, 1), std::invalid_argument);
  CHECK(sample_cases(b, b.size(), 1).cases.size() == b.size());
}

TEST_CASE("ball and training set files round-trip") {
  const Ball b = make_ball(10, 5);
  std::stringstream s;
  b.save(s);
  const Ball c = Ball::load(s);
  REQUIRE(c.size() == b.size());
  CHECK(c.max_depth() == 5);
  CHECK(c.max_total_length() == 10);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(c.member(i).key == b.member(i).key);
    CHECK(c.member(i).depth == b.member(i).depth);
    CHECK(c.member(i).parent == b.member(i).parent);
    CHECK(c.member(i).move == b.member(i).move);
  }

  const TrainingSet t = sample_cases(b, 50, 2);
  std::stringstream ts;
  save_training_set(t, ts);
  const TrainingSet u = load_training_set(ts);
  REQUIRE(u.cases.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(u.cases[i].p == t.cases[i].p);
    CHECK(u.cases[i].l == t.cases[i].l);
  }

  std::stringstream bad("no header\n");
  CHECK_THROWS(Ball::load(bad));
}

TEST_CASE("capacity overflow reports the partial ball") {
  BallLimits limits;
  limits.max_total_length = 12;
  limits.max_depth = 6;
  limits.max_members = 500;
  try {
    build_ball(limits);
    FAIL("expected BallCapacityError");
  } catch (const BallCapacityError& e) {
    CHECK(e.partial().size() > 0);
    CHECK(e.partial().find(trivial_presentation(2)));
  }
}
