#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "acsearch/presentation.hpp"

namespace acs {

using Rng = std::mt19937_64;

struct MutationRates {
  double insert = 0.1;
  double replace = 0.8;
  double remove = 0.1;
};

enum class EditKind { kInsert, kReplace, kDelete };

/// Mutation-only variation over move sequences: one insertion, replacement, or
/// deletion per call. Replacement and deletion on an empty sequence are no-ops.
class Mutator {
 public:
  Mutator(int rank, MutationRates rates);

  EditKind operator()(MoveSequence& s, Rng& rng) const;

  AcMove random_move(Rng& rng) const;
  MoveSequence random_sequence(std::size_t length, Rng& rng) const;
  int rank() const { return rank_; }

 private:
  int rank_;
  MutationRates rates_;
  std::vector<AcMove> moves_;
};

MoveSequence mutate(const MoveSequence& s, int rank, Rng& rng, MutationRates rates = {});

/// Draws `size` indices uniformly (with replacement) from [0, n) and returns the
/// best by `better(a, b)`; the earliest drawn wins ties.
template <class Better>
std::size_t tournament_select(std::size_t n, int size, Rng& rng, Better&& better) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t best = pick(rng);
  for (int k = 1; k < size; ++k) {
    const std::size_t cand = pick(rng);
    if (better(cand, best)) best = cand;
  }
  return best;
}

}  // namespace acs
