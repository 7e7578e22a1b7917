#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acsearch/words.hpp"

namespace acs {

/// A balanced presentation: `rank` generators and exactly `rank` relators.
class Presentation {
 public:
  Presentation() = default;
  /// Throws std::invalid_argument unless balanced and every letter is a valid generator.
  Presentation(int rank, std::vector<Word> relators);

  static Presentation trivial(int rank);

  int rank() const { return rank_; }
  const std::vector<Word>& relators() const { return relators_; }
  const Word& relator(std::size_t i) const { return relators_[i]; }

  /// Replaces one relator. The caller guarantees the letters are in range.
  void set_relator(std::size_t i, Word w) { relators_[i] = std::move(w); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  int rank_ = 0;
  std::vector<Word> relators_;
};

inline Presentation trivial_presentation(int rank) { return Presentation::trivial(rank); }

int total_length(const Presentation& p);

enum class MoveKind : std::uint8_t { kInvert, kMultiply, kConjugate };

/// Conjugation orientation: kPlus is g.r.g^-1, kMinus is g^-1.r.g.
enum class ConjSide : std::uint8_t { kPlus, kMinus };

/// One AC-move. `target` is the relator being replaced; `other` is the right
/// multiplicand for kMultiply or the conjugating generator for kConjugate.
struct AcMove {
  MoveKind kind = MoveKind::kInvert;
  std::uint8_t target = 0;
  std::uint8_t other = 0;
  ConjSide side = ConjSide::kPlus;

  static AcMove invert(int i) { return {MoveKind::kInvert, narrow(i), 0, ConjSide::kPlus}; }
  static AcMove multiply(int i, int j) { return {MoveKind::kMultiply, narrow(i), narrow(j), ConjSide::kPlus}; }
  static AcMove conjugate(int i, int generator, ConjSide side) {
    return {MoveKind::kConjugate, narrow(i), narrow(generator), side};
  }

  bool valid_for(int rank) const;

  friend bool operator==(const AcMove&, const AcMove&) = default;

 private:
  static std::uint8_t narrow(int v);
};

using MoveSequence = std::vector<AcMove>;

/// All 3n^2 moves: n inversions, n(n-1) multiplications, 2n^2 conjugations.
std::vector<AcMove> enumerate_moves(int rank);

/// Throws std::invalid_argument when the move is not valid for `p.rank()`.
Presentation apply_move(const Presentation& p, const AcMove& m);

/// In-place variant used on hot paths; `m` must be valid.
void apply_move_inplace(Presentation& p, const AcMove& m);

/// Moves that undo `m`: the move itself for inversions, the opposite orientation
/// for conjugations, and Invert(j); Multiply(i,j); Invert(j) for multiplications.
MoveSequence inverse_moves(const AcMove& m);

struct Truncation {
  std::size_t step = 0;  // 1-based index of the move that crossed the cap
  int total_length = 0;
};

struct Trace {
  Presentation start;
  std::vector<std::pair<AcMove, Presentation>> steps;
  std::optional<Truncation> truncated;

  const Presentation& final() const { return steps.empty() ? start : steps.back().second; }
};

/// Replays `s` from `p`, stopping at the first step whose total relator length
/// reaches `max_total_length`.
Trace apply_sequence(const Presentation& p, std::span<const AcMove> s, int max_total_length);

/// Each relator replaced by its canonical representative, then relators sorted in shortlex.
Presentation canonical_form(const Presentation& p);

/// Relators sorted in shortlex without touching the words themselves.
Presentation sorted_relators(const Presentation& p);

/// Compact byte string identifying a presentation's relator list.
std::string encode_key(const Presentation& p);
Presentation decode_key(int rank, const std::string& key);

/// Text codes: `I<i>`, `M<i>.<j>`, `C<i>+<g>` (g.r.G), `C<i>-<g>` (G.r.g).
std::string move_code(const AcMove& m);
AcMove parse_move_code(const std::string& code);
std::string sequence_code(std::span<const AcMove> s);
MoveSequence parse_sequence_code(const std::string& text);

}  // namespace acs
