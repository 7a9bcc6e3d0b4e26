#include "specpath/reference_dijkstra.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace specpath {

std::optional<double> reference_cost(const GridMap& map, Cell start, Cell goal, bool corner_cutting) {
  if (!map.in_bounds(start) || !map.in_bounds(goal) || map.blocked(start) || map.blocked(goal)) return std::nullopt;

  const auto inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(map.cell_count(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[map.index(start)] = 0.0;
  pq.emplace(0.0, map.index(start));

  auto free = [&](int x, int y) { return map.in_bounds({x, y}) && !map.blocked({x, y}); };
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const Cell c = map.cell_at(i);
    if (c == goal) return d;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        if (!free(c.x + dx, c.y + dy)) continue;
        const bool diagonal = dx != 0 && dy != 0;
        if (diagonal && !corner_cutting && (!free(c.x + dx, c.y) || !free(c.x, c.y + dy))) continue;
        const auto j = map.index({c.x + dx, c.y + dy});
        const double nd = d + (diagonal ? kSqrt2 : 1.0);
        if (nd < dist[j]) {
          dist[j] = nd;
          pq.emplace(nd, j);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace specpath
