#include "acsearch/ball.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "acsearch/parallel.hpp"
#include "acsearch/text.hpp"

namespace acs {

namespace {

constexpr std::size_t kExpansionBlock = 1 << 14;

int key_total_length(const std::string& key, int rank) { return static_cast<int>(key.size()) - (rank - 1); }

struct Child {
  std::string key;
  AcMove move;
};

}  // namespace

Ball::Ball(const BallLimits& limits) : limits_(limits) {
  if (limits.rank < 1 || limits.max_total_length < 1) {
    throw std::invalid_argument("ball rank and length cap must be at least 1");
  }
  if (limits.max_depth < 0) throw std::invalid_argument("ball depth limit must be non-negative");
}

std::size_t Ball::insert(std::string key, int depth, std::int64_t parent, AcMove move) {
  const auto idx = static_cast<std::uint32_t>(members_.size());
  index_.emplace(key, idx);
  members_.push_back(Member{std::move(key), depth, parent, move});
  return idx;
}

std::optional<std::size_t> Ball::find_key(const std::string& canonical_key) const {
  const auto it = index_.find(canonical_key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> SuccessRegion::depth_of(const Ball& ball, const Presentation& p) const {
  if (max_total_length >= 0 && total_length(p) > max_total_length) return std::nullopt;
  const auto idx = ball.find(p);
  if (!idx) return std::nullopt;
  const int depth = ball.member(*idx).depth;
  if (max_depth >= 0 && depth > max_depth) return std::nullopt;
  return depth;
}

std::optional<std::size_t> Ball::find(const Presentation& p) const {
  if (p.rank() != rank() || total_length(p) > max_total_length()) return std::nullopt;
  return find_key(encode_key(canonical_form(p)));
}

std::vector<std::size_t> Ball::depth_census() const {
  std::vector<std::size_t> census;
  for (const Member& m : members_) {
    if (static_cast<std::size_t>(m.depth) >= census.size()) census.resize(static_cast<std::size_t>(m.depth) + 1);
    ++census[static_cast<std::size_t>(m.depth)];
  }
  return census;
}

Ball build_ball(const BallLimits& limits) {
  Ball ball(limits);
  const int rank = limits.rank;
  const auto moves = enumerate_moves(rank);
  ball.insert(encode_key(canonical_form(trivial_presentation(rank))), 0, -1, AcMove{});

  std::size_t level_begin = 0;
  for (int depth = 0; depth < limits.max_depth; ++depth) {
    const std::size_t level_end = ball.size();
    if (level_begin == level_end) break;
    for (std::size_t block = level_begin; block < level_end; block += kExpansionBlock) {
      const std::size_t block_end = std::min(level_end, block + kExpansionBlock);
      std::vector<std::vector<Child>> children(block_end - block);
      // Expansion reads the index only; insertion below is sequential in frontier order.
      parallel_for(block_end - block, limits.threads, [&](std::size_t k) {
        const Ball::Member& parent = ball.member(block + k);
        if (key_total_length(parent.key, rank) >= limits.max_total_length) return;
        const Presentation base = decode_key(rank, parent.key);
        for (const AcMove& m : moves) {
          Presentation child = base;
          apply_move_inplace(child, m);
          if (total_length(child) > limits.max_total_length) continue;
          std::string key = encode_key(canonical_form(child));
          if (ball.find_key(key)) continue;
          children[k].push_back(Child{std::move(key), m});
        }
      });
      for (std::size_t k = 0; k < children.size(); ++k) {
        for (Child& c : children[k]) {
          if (ball.find_key(c.key)) continue;
          ball.insert(std::move(c.key), depth + 1, static_cast<std::int64_t>(block + k), c.move);
        }
      }
      if (ball.size() > limits.max_members) {
        auto partial = std::make_shared<const Ball>(std::move(ball));
        throw BallCapacityError("ball exceeded " + std::to_string(limits.max_members) + " members at depth " +
                                    std::to_string(depth + 1),
                                std::move(partial));
      }
    }
    level_begin = level_end;
  }
  return ball;
}

TrainingSet sample_cases(const Ball& ball, std::size_t count, std::uint64_t seed) {
  if (ball.size() == 0) throw std::invalid_argument("cannot sample from an empty ball");
  if (count > ball.size()) {
    throw std::invalid_argument("requested " + std::to_string(count) + " cases from a ball of " +
                                std::to_string(ball.size()) + " members");
  }
  std::vector<std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto d = static_cast<std::size_t>(ball.member(i).depth);
    if (d >= strata.size()) strata.resize(d + 1);
    strata[d].push_back(i);
  }
  std::erase_if(strata, [](const auto& s) { return s.empty(); });

  std::mt19937_64 rng(seed);
  TrainingSet out;
  out.cases.reserve(count);
  std::vector<std::size_t> order(strata.size());
  while (out.cases.size() < count) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s : order) {
      if (out.cases.size() == count) break;
      auto& stratum = strata[s];
      if (stratum.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, stratum.size() - 1);
      const std::size_t k = pick(rng);
      const std::size_t member = stratum[k];
      stratum[k] = stratum.back();
      stratum.pop_back();
      out.cases.push_back(FitnessCase{ball.presentation(member), ball.member(member).depth});
    }
  }
  return out;
}

namespace {

// Moves turning relator `from` into exactly `to`, where both share a canonical
// representative: an optional inversion followed by single-letter rotations,
// each realised as a conjugation.
MoveSequence align_relator(const Word& from, const Word& to, int index) {
  const std::size_t n = from.size();
  const std::vector<Letter> want(to.begin(), to.end());
  std::optional<MoveSequence> best;
  for (bool invert : {false, true}) {
    const Word src = invert ? invert_word(from) : from;
    const std::size_t rotations = (n == 0 || has_cyclic_cancellation(src)) ? 1 : n;
    for (std::size_t r = 0; r < rotations; ++r) {
      if (rotate_letters(src, r) != want) continue;
      MoveSequence seq;
      if (invert) seq.push_back(AcMove::invert(index));
      Word cur = src;
      if (r <= n - r) {
        // Left rotation x.u -> u.x is conjugation by x^-1 on the left.
        for (std::size_t k = 0; k < r; ++k) {
          const Letter x = cur[0];
          seq.push_back(AcMove::conjugate(index, x.generator(), x.is_inverse() ? ConjSide::kPlus : ConjSide::kMinus));
          cur = Word(rotate_letters(cur, 1));
        }
      } else {
        // Right rotation u.y -> y.u is conjugation by y on the left.
        for (std::size_t k = 0; k < n - r; ++k) {
          const Letter y = cur[cur.size() - 1];
          seq.push_back(AcMove::conjugate(index, y.generator(), y.is_inverse() ? ConjSide::kMinus : ConjSide::kPlus));
          cur = Word(rotate_letters(cur, cur.size() - 1));
        }
      }
      if (!best || seq.size() < best->size()) best = std::move(seq);
    }
  }
  if (!best) throw std::logic_error("relators do not share a canonical representative");
  return *best;
}

}  // namespace

std::optional<BallPath> lookup(const Ball& ball, const Presentation& p) {
  auto idx = ball.find(p);
  if (!idx) return std::nullopt;
  BallPath out;
  out.depth = ball.member(*idx).depth;
  Presentation work = p;
  const auto emit = [&](const AcMove& m) {
    apply_move_inplace(work, m);
    out.path.push_back(m);
  };

  while (ball.member(*idx).parent >= 0) {
    const Ball::Member& child = ball.member(*idx);
    const auto parent_idx = static_cast<std::size_t>(child.parent);
    const Presentation target = apply_move(ball.presentation(parent_idx), child.move);

    // slot[j] = working index holding the relator that plays target relator j.
    const std::size_t n = target.relators().size();
    std::vector<std::size_t> slot(n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      const Word want = canonical_rep(target.relator(j));
      std::size_t k = 0;
      while (k < n && (used[k] || canonical_rep(work.relator(k)) != want)) ++k;
      if (k == n) throw std::logic_error("ball parent link does not match member");
      used[k] = true;
      slot[j] = k;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (const AcMove& m : align_relator(work.relator(slot[j]), target.relator(j), static_cast<int>(slot[j]))) {
        emit(m);
      }
    }
    for (AcMove m : inverse_moves(child.move)) {
      m.target = static_cast<std::uint8_t>(slot[m.target]);
      if (m.kind == MoveKind::kMultiply) m.other = static_cast<std::uint8_t>(slot[m.other]);
      emit(m);
    }
    idx = parent_idx;
  }
  return out;
}

void Ball::save(std::ostream& out) const {
  out << "# ball rank=" << rank() << " max_total_length=" << max_total_length() << " max_depth=" << max_depth()
      << '\n';
  for (const Member& m : members_) {
    out << format_presentation(decode_key(rank(), m.key)) << '\t' << m.depth << '\t' << m.parent << '\t'
        << (m.parent < 0 ? std::string("-") : move_code(m.move)) << '\n';
  }
}

Ball Ball::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ball", 0) != 0) throw std::runtime_error("missing ball header");
  BallLimits limits;
  {
    std::istringstream header(line.substr(6));
    std::string field;
    while (header >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) continue;
      const std::string name = field.substr(0, eq);
      const int value = std::stoi(field.substr(eq + 1));
      if (name == "rank") limits.rank = value;
      if (name == "max_total_length") limits.max_total_length = value;
      if (name == "max_depth") limits.max_depth = value;
    }
  }
  Ball ball(limits);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string text, depth, parent, code;
    if (!std::getline(row, text, '\t') || !std::getline(row, depth, '\t') || !std::getline(row, parent, '\t') ||
        !std::getline(row, code)) {
      throw std::runtime_error("malformed ball line " + std::to_string(line_no));
    }
    const Presentation p = parse_presentation(text);
    if (p.rank() != limits.rank) throw std::runtime_error("rank mismatch on ball line " + std::to_string(line_no));
    const std::int64_t parent_idx = std::stoll(parent);
    if (parent_idx >= static_cast<std::int64_t>(ball.size())) {
      throw std::runtime_error("forward parent reference on ball line " + std::to_string(line_no));
    }
    ball.insert(encode_key(canonical_form(p)), std::stoi(depth), parent_idx,
                parent_idx < 0 ? AcMove{} : parse_move_code(code));
  }
  return ball;
}

void save_training_set(const TrainingSet& t, std::ostream& out) {
  for (const FitnessCase& c : t.cases) out << format_presentation(c.p) << '\t' << c.l << '\n';
}

TrainingSet load_training_set(std::istream& in) {
  TrainingSet t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw std::runtime_error("malformed training line " + std::to_string(line_no));
    t.cases.push_back(FitnessCase{parse_presentation(line.substr(0, tab)), std::stoi(line.substr(tab + 1))});
  }
  return t;
}

}  // namespace acs
