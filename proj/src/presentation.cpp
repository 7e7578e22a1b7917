#include "acsearch/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace acs {

namespace {

constexpr int kMaxRank = 100;

void check_rank(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");
  if (rank > kMaxRank) throw std::invalid_argument("rank exceeds " + std::to_string(kMaxRank));
}

}  // namespace

Presentation::Presentation(int rank, std::vector<Word> relators) : rank_(rank), relators_(std::move(relators)) {
  check_rank(rank);
  if (static_cast<int>(relators_.size()) != rank) {
    throw std::invalid_argument("unbalanced presentation: " + std::to_string(relators_.size()) +
                                " relators for rank " + std::to_string(rank));
  }
  for (const Word& w : relators_) {
    for (Letter x : w) {
      if (x.generator() >= rank) throw std::invalid_argument("letter references generator outside rank");
    }
  }
}

Presentation Presentation::trivial(int rank) {
  check_rank(rank);
  std::vector<Word> rels;
  rels.reserve(static_cast<std::size_t>(rank));
  for (int g = 0; g < rank; ++g) rels.push_back(Word{Letter::positive(g)});
  return Presentation(rank, std::move(rels));
}

int total_length(const Presentation& p) {
  int n = 0;
  for (const Word& w : p.relators()) n += static_cast<int>(w.size());
  return n;
}

std::uint8_t AcMove::narrow(int v) {
  if (v < 0 || v > 255) throw std::invalid_argument("move index out of range");
  return static_cast<std::uint8_t>(v);
}

bool AcMove::valid_for(int rank) const {
  if (target >= rank) return false;
  switch (kind) {
    case MoveKind::kInvert:
      return true;
    case MoveKind::kMultiply:
      return other < rank && other != target;
    case MoveKind::kConjugate:
      return other < rank;
  }
  return false;
}

std::vector<AcMove> enumerate_moves(int rank) {
  check_rank(rank);
  std::vector<AcMove> moves;
  moves.reserve(static_cast<std::size_t>(3 * rank * rank));
  for (int i = 0; i < rank; ++i) moves.push_back(AcMove::invert(i));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      if (i != j) moves.push_back(AcMove::multiply(i, j));
    }
  }
  for (int i = 0; i < rank; ++i) {
    for (int g = 0; g < rank; ++g) {
      moves.push_back(AcMove::conjugate(i, g, ConjSide::kPlus));
      moves.push_back(AcMove::conjugate(i, g, ConjSide::kMinus));
    }
  }
  return moves;
}

void apply_move_inplace(Presentation& p, const AcMove& m) {
  const Word& r = p.relator(m.target);
  switch (m.kind) {
    case MoveKind::kInvert:
      p.set_relator(m.target, invert_word(r));
      return;
    case MoveKind::kMultiply:
      p.set_relator(m.target, concat_reduce(r, p.relator(m.other)));
      return;
    case MoveKind::kConjugate: {
      const Letter g = Letter::positive(m.other);
      const Letter left = m.side == ConjSide::kPlus ? g : g.inverse();
      std::vector<Letter> raw;
      raw.reserve(r.size() + 2);
      raw.push_back(left);
      raw.insert(raw.end(), r.begin(), r.end());
      raw.push_back(left.inverse());
      p.set_relator(m.target, free_reduce(raw));
      return;
    }
  }
}

Presentation apply_move(const Presentation& p, const AcMove& m) {
  if (!m.valid_for(p.rank())) throw std::invalid_argument("move " + move_code(m) + " invalid for rank " +
                                                          std::to_string(p.rank()));
  Presentation out = p;
  apply_move_inplace(out, m);
  return out;
}

MoveSequence inverse_moves(const AcMove& m) {
  switch (m.kind) {
    case MoveKind::kInvert:
      return {m};
    case MoveKind::kConjugate:
      return {AcMove::conjugate(m.target, m.other, m.side == ConjSide::kPlus ? ConjSide::kMinus : ConjSide::kPlus)};
    case MoveKind::kMultiply:
      return {AcMove::invert(m.other), m, AcMove::invert(m.other)};
  }
  return {};
}

Trace apply_sequence(const Presentation& p, std::span<const AcMove> s, int max_total_length) {
  Trace trace{p, {}, std::nullopt};
  trace.steps.reserve(s.size());
  Presentation cur = p;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cur = apply_move(cur, s[k]);
    trace.steps.emplace_back(s[k], cur);
    if (const int len = total_length(cur); len >= max_total_length) {
      trace.truncated = Truncation{k + 1, len};
      break;
    }
  }
  return trace;
}

Presentation sorted_relators(const Presentation& p) {
  std::vector<Word> rels = p.relators();
  std::sort(rels.begin(), rels.end(), [](const Word& a, const Word& b) { return shortlex_cmp(a, b) < 0; });
  return Presentation(p.rank(), std::move(rels));
}

Presentation canonical_form(const Presentation& p) {
  std::vector<Word> rels;
  rels.reserve(p.relators().size());
  for (const Word& w : p.relators()) rels.push_back(canonical_rep(w));
  std::sort(rels.begin(), rels.end(), [](const Word& a, const Word& b) { return shortlex_cmp(a, b) < 0; });
  return Presentation(p.rank(), std::move(rels));
}

std::string encode_key(const Presentation& p) {
  std::string key;
  key.reserve(static_cast<std::size_t>(total_length(p) + p.rank()));
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i > 0) key.push_back('\0');
    for (Letter x : p.relator(i)) key.push_back(static_cast<char>(x.code()));
  }
  return key;
}

Presentation decode_key(int rank, const std::string& key) {
  std::vector<Word> rels;
  std::vector<Letter> cur;
  for (char c : key) {
    if (c == '\0') {
      rels.emplace_back(cur);
      cur.clear();
    } else {
      cur.push_back(Letter::from_code(static_cast<signed char>(c)));
    }
  }
  rels.emplace_back(cur);
  return Presentation(rank, std::move(rels));
}

std::string move_code(const AcMove& m) {
  const std::string i = std::to_string(m.target);
  switch (m.kind) {
    case MoveKind::kInvert:
      return "I" + i;
    case MoveKind::kMultiply:
      return "M" + i + "." + std::to_string(m.other);
    case MoveKind::kConjugate:
      return "C" + i + (m.side == ConjSide::kPlus ? "+" : "-") + std::to_string(m.other);
  }
  return {};
}

namespace {

int parse_index(std::string_view s, const std::string& code) {
  int v = -1;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0 || v > 255) {
    throw std::invalid_argument("malformed move code '" + code + "'");
  }
  return v;
}

}  // namespace

AcMove parse_move_code(const std::string& code) {
  if (code.size() < 2) throw std::invalid_argument("malformed move code '" + code + "'");
  const std::string_view body = std::string_view(code).substr(1);
  switch (code[0]) {
    case 'I':
      return AcMove::invert(parse_index(body, code));
    case 'M': {
      const auto dot = body.find('.');
      if (dot == std::string_view::npos) throw std::invalid_argument("malformed move code '" + code + "'");
      const int i = parse_index(body.substr(0, dot), code);
      const int j = parse_index(body.substr(dot + 1), code);
      if (i == j) throw std::invalid_argument("multiplication of a relator by itself: '" + code + "'");
      return AcMove::multiply(i, j);
    }
    case 'C': {
      const auto sign = body.find_first_of("+-");
      if (sign == std::string_view::npos) throw std::invalid_argument("malformed move code '" + code + "'");
      const int i = parse_index(body.substr(0, sign), code);
      const int g = parse_index(body.substr(sign + 1), code);
      return AcMove::conjugate(i, g, body[sign] == '+' ? ConjSide::kPlus : ConjSide::kMinus);
    }
    default:
      throw std::invalid_argument("malformed move code '" + code + "'");
  }
}

std::string sequence_code(std::span<const AcMove> s) {
  if (s.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) out.push_back(' ');
    out += move_code(s[k]);
  }
  return out;
}

MoveSequence parse_sequence_code(const std::string& text) {
  MoveSequence out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "-") continue;
    out.push_back(parse_move_code(tok));
  }
  return out;
}

}  // namespace acs
