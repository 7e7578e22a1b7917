#include "acsearch/words.hpp"

#include <algorithm>

namespace acs {

Word::Word(std::span<const Letter> letters) : Word(free_reduce(letters)) {}

Word::Word(std::initializer_list<Letter> letters)
    : Word(free_reduce(std::span<const Letter>(letters.begin(), letters.size()))) {}

Word free_reduce(std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter x : raw) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return Word(Word::Trusted{}, std::move(out));
}

Word invert_word(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(Word::Trusted{}, std::move(out));
}

Word concat_reduce(const Word& u, const Word& v) {
  // Cancellation only happens at the junction of two reduced words.
  std::size_t cancel = 0;
  const std::size_t limit = std::min(u.size(), v.size());
  while (cancel < limit && u.letters_[u.size() - 1 - cancel] == v.letters_[cancel].inverse()) ++cancel;
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * cancel);
  out.insert(out.end(), u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), v.letters_.end());
  return Word(Word::Trusted{}, std::move(out));
}

std::strong_ordering shortlex_cmp(const Word& u, const Word& v) {
  if (auto c = u.size() <=> v.size(); c != 0) return c;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (auto c = u[i] <=> v[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool has_cyclic_cancellation(const Word& w) {
  return w.size() >= 2 && w[w.size() - 1] == w[0].inverse();
}

std::vector<Letter> rotate_letters(const Word& w, std::size_t k) {
  std::vector<Letter> out(w.begin(), w.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
  return out;
}

namespace {

// Compares rotation `r` of `a` against rotation `s` of `b`, both of length n.
std::strong_ordering compare_rotations(std::span<const Letter> a, std::size_t r, std::span<const Letter> b,
                                       std::size_t s) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[(r + i) % n] <=> b[(s + i) % n]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

Word canonical_rep(const Word& w) {
  if (w.empty()) return w;
  const Word inv = invert_word(w);
  // A rotation is reduced iff the junction between the last and first letters
  // does not cancel, so either every rotation qualifies or only the identity one.
  const std::size_t rotations = has_cyclic_cancellation(w) ? 1 : w.size();

  std::span<const Letter> best_src = w.letters();
  std::size_t best_shift = 0;
  for (std::span<const Letter> src : {w.letters(), inv.letters()}) {
    for (std::size_t k = 0; k < rotations; ++k) {
      if (compare_rotations(src, k, best_src, best_shift) < 0) {
        best_src = src;
        best_shift = k;
      }
    }
  }
  std::vector<Letter> out(best_src.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = best_src[(best_shift + i) % out.size()];
  return Word(Word::Trusted{}, std::move(out));
}

int hamming_distance(const Word& u, const Word& v, bool fold_inverses) {
  if (u.size() != v.size()) return -1;
  int d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool same = fold_inverses ? u[i].generator() == v[i].generator() : u[i] == v[i];
    if (!same) ++d;
  }
  return d;
}

}  // namespace acs
