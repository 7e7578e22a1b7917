#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsearch/ball.hpp"
#include "acsearch/presentation.hpp"

namespace acs {

struct ProofStep {
  AcMove move;
  /// Relator-content description, e.g. "(b^2aBA)^A" or "ab^2aBA^2 *= a^2bAB".
  std::string description;
  Presentation before;
  Presentation after;
  /// Step comes from the ball path rather than the searched sequence.
  bool from_ball = false;
};

struct Proof {
  std::string instance;
  Presentation start;
  std::vector<ProofStep> steps;
  /// Length of the searched prefix that entered the ball.
  std::optional<std::size_t> prefix_length;
  std::optional<int> ball_depth;
  bool verified = false;
  std::string failure;
};

/// Proof-step label for `m` acting on `p`: inversion "(r)^-1", multiplication
/// "ri *= rj", conjugation "(r)^G" for g.r.G and "(r)^g" for G.r.g.
std::string describe_move(const Presentation& p, const AcMove& m);

/// Replays `sequence` from `instance`, stops at the first prefix whose canonical
/// class lies in `region` of the ball, appends the
/// ball path to the trivial class and checks the end point.
Proof verify(const std::string& instance_id, const Presentation& instance, const MoveSequence& sequence,
             const Ball& ball, const SuccessRegion& region = {});

/// Re-applies every step and confirms each stored presentation.
bool replays_exactly(const Proof& proof);

/// One line per step, "<before> → [label] <after>", presentations shown with
/// relators in shortlex order.
std::string format_proof(const Proof& proof);

}  // namespace acs
