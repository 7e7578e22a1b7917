#include "acsearch/variation.hpp"

#include <cmath>

namespace acs {

Mutator::Mutator(int rank, MutationRates rates) : rank_(rank), rates_(rates), moves_(enumerate_moves(rank)) {
  if (rates.insert < 0 || rates.replace < 0 || rates.remove < 0 ||
      std::abs(rates.insert + rates.replace + rates.remove - 1.0) > 1e-9) {
    throw std::invalid_argument("mutation probabilities must be non-negative and sum to 1");
  }
}

AcMove Mutator::random_move(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, moves_.size() - 1);
  return moves_[pick(rng)];
}

MoveSequence Mutator::random_sequence(std::size_t length, Rng& rng) const {
  MoveSequence s;
  s.reserve(length);
  for (std::size_t k = 0; k < length; ++k) s.push_back(random_move(rng));
  return s;
}

EditKind Mutator::operator()(MoveSequence& s, Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < rates_.insert) {
    const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), random_move(rng));
    return EditKind::kInsert;
  }
  if (u < rates_.insert + rates_.replace) {
    if (!s.empty()) {
      const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
      s[pos] = random_move(rng);
    }
    return EditKind::kReplace;
  }
  if (!s.empty()) {
    const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return EditKind::kDelete;
}

MoveSequence mutate(const MoveSequence& s, int rank, Rng& rng, MutationRates rates) {
  MoveSequence out = s;
  Mutator(rank, rates)(out, rng);
  return out;
}

}  // namespace acs
