#include "acsearch/text.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <vector>

namespace acs {

namespace {

constexpr int kLetterNames = 26;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool is_indexed_name(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'x' && s[0] != 'X')) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// Maps lowercase generator names to indices.
using NameTable = std::map<std::string, int, std::less<>>;

std::vector<Letter> parse_letters(std::string_view text, const NameTable& names) {
  std::vector<Letter> raw;
  text = trim(text);
  if (text == "1") return raw;
  if (text.empty()) throw ParseError("empty relator (write 1 for the identity)");
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in relator '" + std::string(text) + "'");
    }
    std::size_t j = i + 1;
    if ((c == 'x' || c == 'X') && j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    }
    std::string name(text.substr(i, j - i));
    const bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
    const auto it = names.find(name);
    if (it == names.end()) throw ParseError("unknown generator symbol '" + std::string(text.substr(i, j - i)) + "'");
    i = j;

    int power = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t k = i;
      if (k < text.size() && text[k] == '-') ++k;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + k, power);
      if (ec != std::errc{} || ptr != text.data() + k || k == i) {
        throw ParseError("malformed exponent in relator '" + std::string(text) + "'");
      }
      i = k;
    }
    Letter x = inverse ? Letter::negative(it->second) : Letter::positive(it->second);
    if (power < 0) {
      x = x.inverse();
      power = -power;
    }
    raw.insert(raw.end(), static_cast<std::size_t>(power), x);
  }
  return raw;
}

NameTable standard_names(int rank) {
  NameTable names;
  for (int g = 0; g < rank; ++g) {
    names.emplace(generator_name(g, rank), g);
    names.emplace("x" + std::to_string(g), g);
  }
  return names;
}

}  // namespace

std::string generator_name(int generator, int rank) {
  if (rank <= kLetterNames) return std::string(1, static_cast<char>('a' + generator));
  return "x" + std::to_string(generator);
}

Presentation parse_presentation(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '<' || text.back() != '>') {
    throw ParseError("presentation must be enclosed in < >");
  }
  const std::string_view body = text.substr(1, text.size() - 2);
  const auto bar = body.find('|');
  if (bar == std::string_view::npos) throw ParseError("missing '|' between generators and relators");

  NameTable names;
  const auto gens = split(body.substr(0, bar), ',');
  for (std::string_view g : gens) {
    const bool ok = (g.size() == 1 && std::islower(static_cast<unsigned char>(g[0]))) ||
                    (is_indexed_name(g) && g[0] == 'x');
    if (!ok) throw ParseError("invalid generator name '" + std::string(g) + "'");
    if (!names.emplace(std::string(g), static_cast<int>(names.size())).second) {
      throw ParseError("duplicate generator '" + std::string(g) + "'");
    }
  }
  const int rank = static_cast<int>(names.size());
  // x<k> spellings are always accepted as aliases of the k-th generator.
  for (int g = 0; g < rank; ++g) names.emplace("x" + std::to_string(g), g);

  const auto rel_texts = split(body.substr(bar + 1), ',');
  if (static_cast<int>(rel_texts.size()) != rank) {
    throw ParseError("unbalanced presentation: " + std::to_string(rank) + " generators, " +
                     std::to_string(rel_texts.size()) + " relators");
  }
  std::vector<Word> rels;
  rels.reserve(rel_texts.size());
  for (std::string_view r : rel_texts) rels.emplace_back(parse_letters(r, names));
  return Presentation(rank, std::move(rels));
}

Word parse_word(std::string_view text, int rank) { return Word(parse_letters(text, standard_names(rank))); }

std::string format_word(const Word& w, int rank) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i + 1;
    while (j < w.size() && w[j] == w[i]) ++j;
    std::string name = generator_name(w[i].generator(), rank);
    if (w[i].is_inverse()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string format_presentation(const Presentation& p) {
  std::string out = "<";
  for (int g = 0; g < p.rank(); ++g) {
    if (g > 0) out.push_back(',');
    out += generator_name(g, p.rank());
  }
  out.push_back('|');
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i > 0) out.push_back(',');
    out += format_word(p.relator(i), p.rank());
  }
  out.push_back('>');
  return out;
}

}  // namespace acs
