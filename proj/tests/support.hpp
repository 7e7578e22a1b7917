// Test-only oracles and fixtures. Everything here is deliberately naive and
// independent of the library code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "acsearch/ball.hpp"
#include "acsearch/presentation.hpp"
#include "acsearch/text.hpp"

namespace acs::testing {

struct GoldenProof {
  std::string id;
  std::string sequence;            // working-index move codes
  std::vector<std::string> lines;  // displayed presentations, first = instance
  std::vector<std::string> labels;
};

// Known trivializing sequences with every intermediate presentation, ASCII exponents.
inline const GoldenProof& t1_proof() {
  static const GoldenProof p{
      "T1",
      "C1+0 M1.0 C0-1 C1+0 I1 M0.1",
      {"<a,b|a^2bAB,b^2aBA>", "<a,b|a^2bAB,ab^2aBA^2>", "<a,b|ab,a^2bAB>", "<a,b|ab,Ba^2bA>",
       "<a,b|a^2bA,Ba^2bA>", "<a,b|aBA^2,Ba^2bA>", "<a,b|B,aBA^2>"},
      {"(b^2aBA)^A", "ab^2aBA^2 *= a^2bAB", "(a^2bAB)^b", "(ab)^A", "(a^2bA)^-1", "Ba^2bA *= aBA^2"}};
  return p;
}

inline const GoldenProof& t13_proof() {
  static const GoldenProof p{
      "T13",
      "C1+0 M1.0 C1+0 I1 C1-1 C0-1 M1.0",
      {"<a,b|a^2bAbAB,b^2aBaBA>", "<a,b|a^2bAbAB,ab^2aBaBA^2>", "<a,b|ab,a^2bAbAB>", "<a,b|a^2bA,a^2bAbAB>",
       "<a,b|aBA^2,a^2bAbAB>", "<a,b|BaBA^2b,a^2bAbAB>", "<a,b|BaBA^2b,Ba^2bAbA>", "<a,b|A,Ba^2bAbA>"},
      {"(b^2aBaBA)^A", "ab^2aBaBA^2 *= a^2bAbAB", "(ab)^A", "(a^2bA)^-1", "(aBA^2)^b", "(a^2bAbAB)^b",
       "BaBA^2b *= Ba^2bAbA"}};
  return p;
}

// Words as plain letter-code vectors, reduced by repeated scanning.
inline std::vector<int> naive_reduce(std::vector<int> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline std::vector<int> codes(const Word& w) {
  std::vector<int> out;
  for (Letter x : w) out.push_back(x.code());
  return out;
}

inline Word from_codes(const std::vector<int>& c) {
  std::vector<Letter> raw;
  for (int v : c) raw.push_back(Letter::from_code(v));
  return Word(raw);
}

// Alphabet rank a < A < b < B < ...
inline int alpha_rank(int code) { return 2 * (std::abs(code) - 1) + (code < 0 ? 1 : 0); }

inline bool naive_shortlex_less(const std::vector<int>& u, const std::vector<int>& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return alpha_rank(u[i]) < alpha_rank(v[i]);
  }
  return false;
}

// Enumerates every rotation of w and its inverse, keeps the freely reduced ones,
// returns the shortlex-least.
inline std::vector<int> naive_canonical(const std::vector<int>& w) {
  std::vector<int> inv(w.rbegin(), w.rend());
  for (int& c : inv) c = -c;
  std::vector<int> best = w;
  for (const auto& src : {w, inv}) {
    for (std::size_t r = 0; r < std::max<std::size_t>(src.size(), 1); ++r) {
      std::vector<int> rot(src.begin() + static_cast<std::ptrdiff_t>(r), src.end());
      rot.insert(rot.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(r));
      if (naive_reduce(rot) != rot) continue;
      if (naive_shortlex_less(rot, best)) best = rot;
    }
  }
  return best;
}

inline Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, rank - 1);
  std::bernoulli_distribution neg(0.5);
  std::vector<Letter> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back(neg(rng) ? Letter::negative(gen(rng)) : Letter::positive(gen(rng)));
  return Word(raw);
}

inline Presentation random_presentation(std::mt19937_64& rng, int rank, int max_len) {
  std::vector<Word> rels;
  for (int i = 0; i < rank; ++i) rels.push_back(random_word(rng, rank, max_len));
  return Presentation(rank, std::move(rels));
}

// Independent BFS: formatted canonical text as key, moves tried in reverse
// enumeration order, explicit FIFO queue.
inline std::map<std::string, int> oracle_bfs(int rank, int max_total_length, int max_depth) {
  std::map<std::string, int> depth;
  auto moves = enumerate_moves(rank);
  std::reverse(moves.begin(), moves.end());
  const Presentation root = canonical_form(trivial_presentation(rank));
  depth[format_presentation(root)] = 0;
  std::deque<std::pair<Presentation, int>> queue{{root, 0}};
  while (!queue.empty()) {
    auto [p, d] = queue.front();
    queue.pop_front();
    if (d == max_depth || total_length(p) >= max_total_length) continue;
    for (const AcMove& m : moves) {
      const Presentation q = canonical_form(apply_move(p, m));
      if (total_length(q) > max_total_length) continue;
      if (depth.emplace(format_presentation(q), d + 1).second) queue.emplace_back(q, d + 1);
    }
  }
  return depth;
}

// Pairwise-dominance ranks by repeated peeling of the non-dominated set.
inline std::vector<int> oracle_pareto_ranks(const std::vector<std::vector<double>>& pts) {
  const auto dom = [](const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return false;
      strict = strict || a[i] < b[i];
    }
    return strict;
  };
  std::vector<int> rank(pts.size(), -1);
  std::size_t assigned = 0;
  for (int level = 0; assigned < pts.size(); ++level) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] >= 0) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        dominated = j != i && rank[j] < 0 && dom(pts[j], pts[i]);
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) rank[i] = level;
    assigned += front.size();
  }
  return rank;
}

// Definition-direct correlations.
inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  return cov / (std::sqrt(vx) * std::sqrt(vy));
}

inline double oracle_kendall_b(const std::vector<double>& x, const std::vector<double>& y) {
  long long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0, pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ++pairs;
      const int sx = (x[i] > x[j]) - (x[i] < x[j]);
      const int sy = (y[i] > y[j]) - (y[i] < y[j]);
      if (sx == 0) ++tie_x;
      if (sy == 0) ++tie_y;
      if (sx * sy > 0) ++concordant;
      if (sx * sy < 0) ++discordant;
    }
  }
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(pairs - tie_x) * static_cast<double>(pairs - tie_y));
}

}  // namespace acs::testing
