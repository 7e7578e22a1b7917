#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "acsearch/presentation.hpp"

namespace acs {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `<g1,...,gn | w1,...,wn>`. Generators are single lowercase letters or
/// `x0, x1, ...`; uppercase (or `X<k>`) denotes the inverse; `^k` repeats the
/// preceding letter; `1` is the empty relator.
Presentation parse_presentation(std::string_view text);

/// Parses a single word against the standard generator names for `rank`.
Word parse_word(std::string_view text, int rank);

/// Standard generator names: a, b, c, ... up to rank 26, x0, x1, ... beyond.
std::string generator_name(int generator, int rank);

/// Run-length form, e.g. "a^2bAB"; the empty word is "1".
std::string format_word(const Word& w, int rank);

/// "<a,b|a^2bAB,b^2aBA>"
std::string format_presentation(const Presentation& p);

}  // namespace acs
