#include "acsearch/proof.hpp"

#include <cctype>
#include <sstream>

#include "acsearch/text.hpp"

namespace acs {

std::string describe_move(const Presentation& p, const AcMove& m) {
  const int rank = p.rank();
  const std::string r = format_word(p.relator(m.target), rank);
  switch (m.kind) {
    case MoveKind::kInvert:
      return "(" + r + ")^-1";
    case MoveKind::kMultiply:
      return r + " *= " + format_word(p.relator(m.other), rank);
    case MoveKind::kConjugate: {
      std::string g = generator_name(m.other, rank);
      if (m.side == ConjSide::kPlus) g[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(g[0])));
      return "(" + r + ")^" + g;
    }
  }
  return {};
}

Proof verify(const std::string& instance_id, const Presentation& instance, const MoveSequence& sequence,
             const Ball& ball, const SuccessRegion& region) {
  Proof proof;
  proof.instance = instance_id;
  proof.start = instance;
  if (instance.rank() != ball.rank()) {
    proof.failure = "instance rank does not match ball rank";
    return proof;
  }

  const auto entered = [&](const Presentation& p) { return region.depth_of(ball, p); };

  Presentation cur = instance;
  std::optional<int> depth = entered(cur);
  std::size_t k = 0;
  while (!depth && k < sequence.size()) {
    const AcMove& m = sequence[k];
    if (!m.valid_for(cur.rank())) {
      proof.failure = "move " + std::to_string(k + 1) + " (" + move_code(m) + ") is invalid for rank " +
                      std::to_string(cur.rank());
      return proof;
    }
    Presentation next = apply_move(cur, m);
    proof.steps.push_back(ProofStep{m, describe_move(cur, m), cur, next, false});
    cur = std::move(next);
    ++k;
    depth = entered(cur);
  }
  if (!depth) {
    proof.failure = "no prefix of the " + std::to_string(sequence.size()) +
                    "-move sequence enters the ball; final presentation " + format_presentation(cur);
    return proof;
  }
  proof.prefix_length = k;
  proof.ball_depth = *depth;

  const auto path = lookup(ball, cur);
  if (!path) {
    proof.failure = "ball lookup failed for " + format_presentation(cur);
    return proof;
  }
  for (const AcMove& m : path->path) {
    Presentation next = apply_move(cur, m);
    proof.steps.push_back(ProofStep{m, describe_move(cur, m), cur, next, true});
    cur = std::move(next);
  }
  if (canonical_form(cur) != canonical_form(trivial_presentation(instance.rank()))) {
    proof.failure = "ball path ends at " + format_presentation(cur) + ", not the trivial class";
    return proof;
  }
  proof.verified = replays_exactly(proof);
  if (!proof.verified) proof.failure = "stored steps disagree with recomputation";
  return proof;
}

bool replays_exactly(const Proof& proof) {
  Presentation cur = proof.start;
  for (const ProofStep& s : proof.steps) {
    if (s.before != cur || !s.move.valid_for(cur.rank())) return false;
    cur = apply_move(cur, s.move);
    if (s.after != cur) return false;
  }
  return true;
}

std::string format_proof(const Proof& proof) {
  std::ostringstream out;
  if (!proof.instance.empty()) out << proof.instance << ":\n";
  bool in_ball = false;
  for (const ProofStep& s : proof.steps) {
    if (s.from_ball && !in_ball) {
      out << "# ball path (depth " << proof.ball_depth.value_or(-1) << ")\n";
      in_ball = true;
    }
    out << format_presentation(sorted_relators(s.before)) << " →[" << s.description << "] "
        << format_presentation(sorted_relators(s.after)) << '\n';
  }
  if (proof.verified) {
    out << "# verified: prefix " << *proof.prefix_length << ", ball depth " << *proof.ball_depth << ", "
        << proof.steps.size() << " moves to the trivial class\n";
  } else {
    out << "# unverified: " << proof.failure << '\n';
  }
  return out.str();
}

}  // namespace acs
