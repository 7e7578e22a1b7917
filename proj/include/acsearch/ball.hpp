#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "acsearch/presentation.hpp"

namespace acs {

struct BallLimits {
  int rank = 2;
  int max_total_length = 12;
  int max_depth = 6;
  /// Construction aborts with BallCapacityError once the member count exceeds this.
  std::size_t max_members = 20'000'000;
  unsigned threads = 1;
};

/// Presentations reachable from the trivial presentation by breadth-first search,
/// keyed by canonical form, with exact depths and parent links.
class Ball {
 public:
  struct Member {
    std::string key;          // encode_key of the canonical form
    int depth = 0;
    std::int64_t parent = -1;  // index of the parent member, -1 for the root
    AcMove move;              // applied to the parent's canonical form
  };

  Ball() = default;
  explicit Ball(const BallLimits& limits);

  int rank() const { return limits_.rank; }
  int max_total_length() const { return limits_.max_total_length; }
  int max_depth() const { return limits_.max_depth; }
  const BallLimits& limits() const { return limits_; }

  std::size_t size() const { return members_.size(); }
  const Member& member(std::size_t i) const { return members_[i]; }
  Presentation presentation(std::size_t i) const { return decode_key(rank(), members_[i].key); }

  std::optional<std::size_t> find_key(const std::string& canonical_key) const;
  /// Canonicalizes `p` and looks it up. Cheap rejection on rank and length.
  std::optional<std::size_t> find(const Presentation& p) const;
  bool contains(const Presentation& p) const { return find(p).has_value(); }

  /// Member count per depth, index = depth.
  std::vector<std::size_t> depth_census() const;

  /// Line format: `presentation <TAB> depth <TAB> parent-index <TAB> move-code`
  /// after a `#` header line carrying the limits.
  void save(std::ostream& out) const;
  static Ball load(std::istream& in);

 private:
  friend Ball build_ball(const BallLimits& limits);
  std::size_t insert(std::string key, int depth, std::int64_t parent, AcMove move);

  BallLimits limits_;
  std::vector<Member> members_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

class BallCapacityError : public std::runtime_error {
 public:
  BallCapacityError(const std::string& what, std::shared_ptr<const Ball> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Ball& partial() const { return *partial_; }

 private:
  std::shared_ptr<const Ball> partial_;
};

/// Level-synchronous BFS from the trivial presentation over enumerate_moves.
/// Members have total length <= max_total_length; members whose total length
/// reaches the cap, or whose depth equals max_depth, are not expanded.
Ball build_ball(const BallLimits& limits);

/// Part of a ball that counts as solved: members within both bounds, where a
/// negative bound is unrestricted.
struct SuccessRegion {
  int max_depth = -1;
  int max_total_length = -1;

  /// Depth of `p`'s class when it lies in the region.
  std::optional<int> depth_of(const Ball& ball, const Presentation& p) const;
};

struct FitnessCase {
  Presentation p;
  int l = 0;
};

struct TrainingSet {
  std::vector<FitnessCase> cases;
};

/// Depth-stratified sampling without replacement: repeated passes visit the
/// non-exhausted depth strata in random order and draw one member from each.
TrainingSet sample_cases(const Ball& ball, std::size_t count, std::uint64_t seed);

struct BallPath {
  int depth = 0;
  MoveSequence path;  // applies to the queried presentation as given
};

/// Depth of `p`'s canonical class plus a move sequence that carries `p` itself
/// into the trivial class. Path length may exceed depth.
std::optional<BallPath> lookup(const Ball& ball, const Presentation& p);

void save_training_set(const TrainingSet& t, std::ostream& out);
TrainingSet load_training_set(std::istream& in);

}  // namespace acs
