#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace acs {

/// A generator or its inverse, stored as a signed index: +(g+1) for g, -(g+1) for g^-1.
class Letter {
 public:
  constexpr Letter() = default;

  static constexpr Letter positive(int generator) { return Letter(static_cast<std::int16_t>(generator + 1)); }
  static constexpr Letter negative(int generator) { return Letter(static_cast<std::int16_t>(-(generator + 1))); }
  static constexpr Letter from_code(int code) { return Letter(static_cast<std::int16_t>(code)); }

  constexpr int generator() const { return (code_ > 0 ? code_ : -code_) - 1; }
  constexpr bool is_inverse() const { return code_ < 0; }
  constexpr Letter inverse() const { return Letter(static_cast<std::int16_t>(-code_)); }
  constexpr int code() const { return code_; }

  /// Position in the alphabet a < A < b < B < c < ...
  constexpr int order_key() const { return 2 * generator() + (is_inverse() ? 1 : 0); }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter x, Letter y) {
    return x.order_key() <=> y.order_key();
  }

 private:
  constexpr explicit Letter(std::int16_t code) : code_(code) {}
  std::int16_t code_ = 1;
};

/// A freely reduced word over the generators. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Freely reduces `letters`.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  struct Trusted {};
  Word(Trusted, std::vector<Letter> reduced) : letters_(std::move(reduced)) {}

  friend Word free_reduce(std::span<const Letter> raw);
  friend Word invert_word(const Word& w);
  friend Word concat_reduce(const Word& u, const Word& v);
  friend Word canonical_rep(const Word& w);

  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> raw);

Word invert_word(const Word& w);

Word concat_reduce(const Word& u, const Word& v);

/// Shortlex: shorter words first, equal lengths compared letter-wise.
std::strong_ordering shortlex_cmp(const Word& u, const Word& v);

/// Whether the last and first letters cancel (a non-empty word that is not cyclically reduced).
bool has_cyclic_cancellation(const Word& w);

/// Cyclic rotation moving the first `k` letters to the end. Not reduced.
std::vector<Letter> rotate_letters(const Word& w, std::size_t k);

/// Shortlex-least freely reduced word among the rotations of `w` and of its inverse.
Word canonical_rep(const Word& w);

/// Number of positions at which equal-length words differ; with `fold_inverses`
/// a letter and its inverse count as equal. Returns -1 for unequal lengths.
int hamming_distance(const Word& u, const Word& v, bool fold_inverses = false);

}  // namespace acs
