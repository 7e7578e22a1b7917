#include "acsearch/nsga.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace acs {

bool dominates(std::span<const double> a, std::span<const double> b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

std::vector<int> nondominated_sort(const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("objective vectors differ in dimension");
  }

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> dominator_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++dominator_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }

  std::vector<int> rank(n, 0);
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) front.push_back(i);
  }
  int level = 0;
  while (!front.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : front) {
      rank[i] = level;
      for (std::size_t j : dominated[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    front.swap(next);
    ++level;
  }
  return rank;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  const std::size_t dim = front.front().size();
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < dim; ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    const double lo = front[order.front()][m];
    const double hi = front[order.back()][m];
    if (!(hi > lo) || hi - lo == inf) continue;
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      dist[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / (hi - lo);
    }
  }
  return dist;
}

std::vector<double> crowding_by_front(const std::vector<ObjectiveVector>& points, const std::vector<int>& ranks) {
  std::vector<double> out(points.size(), 0.0);
  const int levels = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(levels));
  for (std::size_t i = 0; i < ranks.size(); ++i) members[static_cast<std::size_t>(ranks[i])].push_back(i);
  for (const auto& idx : members) {
    std::vector<ObjectiveVector> front;
    front.reserve(idx.size());
    for (std::size_t i : idx) front.push_back(points[i]);
    const auto d = crowding_distance(front);
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = d[k];
  }
  return out;
}

}  // namespace acs
