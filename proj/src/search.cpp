#include "specpath/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>
#include <sstream>

#include "specpath/errors.hpp"

namespace specpath {

void OpenList::push(Cell cell, double g, double h, double epsilon, std::optional<Cell> parent) {
  heap_.push(SearchNode{cell, g, h, g + epsilon * h, parent, next_seq_++});
}

SearchNode OpenList::pop() {
  SearchNode node = heap_.top();
  heap_.pop();
  return node;
}

SearchTables::SearchTables(const GridMap& map)
    : g(map.cell_count(), std::numeric_limits<double>::infinity()), parent(map.cell_count(), -1),
      closed(map.cell_count(), 0) {}

std::optional<SearchNode> pop_expand(OpenList& open, SearchTables& tables, const GridMap& map) {
  while (!open.empty()) {
    SearchNode node = open.pop();
    const auto i = map.index(node.cell);
    if (tables.closed[i]) continue;
    tables.closed[i] = 1;
    // An older entry can tie on f after rounding; the tables hold the best g and parent.
    node.g = tables.g[i];
    node.parent = tables.parent[i] < 0 ? std::nullopt
                                       : std::optional<Cell>(map.cell_at(static_cast<std::size_t>(tables.parent[i])));
    return node;
  }
  return std::nullopt;
}

namespace {

bool passable(const CollisionStatusStore& store, const GridMap& map, Cell c) {
  if (!map.in_bounds(c)) return false;
  const auto s = store.status(c);
  if (s == CollisionStatus::kUnknown) {
    std::ostringstream msg;
    msg << "relax_neighbors: status of " << c << " is still unknown";
    throw InvariantViolation(msg.str());
  }
  return s == CollisionStatus::kFree;
}

}  // namespace

int relax_neighbors(const SearchNode& exp, const GridMap& map, const CollisionStatusStore& store, OpenList& open,
                    SearchTables& tables, Cell goal, const PlannerConfig& config) {
  int pushes = 0;
  for (const auto& m : kMotions) {
    const Cell n{exp.cell.x + m.dx, exp.cell.y + m.dy};
    if (!passable(store, map, n)) continue;
    const auto i = map.index(n);
    if (tables.closed[i]) continue;
    if (!config.corner_cutting && m.dx != 0 && m.dy != 0) {
      if (!passable(store, map, {exp.cell.x + m.dx, exp.cell.y}) || !passable(store, map, {exp.cell.x, exp.cell.y + m.dy}))
        continue;
    }
    const double g = exp.g + m.cost;
    if (!(g < tables.g[i])) continue;
    tables.g[i] = g;
    tables.parent[i] = static_cast<std::int64_t>(map.index(exp.cell));
    open.push(n, g, euclidean_h(n, goal), config.epsilon, exp.cell);
    ++pushes;
  }
  return pushes;
}

std::vector<Cell> reconstruct_path(Cell goal, const SearchTables& tables, const GridMap& map) {
  std::vector<Cell> path{goal};
  auto i = static_cast<std::int64_t>(map.index(goal));
  while (tables.parent[static_cast<std::size_t>(i)] >= 0) {
    i = tables.parent[static_cast<std::size_t>(i)];
    path.push_back(map.cell_at(static_cast<std::size_t>(i)));
    if (path.size() > map.cell_count()) throw InvariantViolation("reconstruct_path: cycle in parent links");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PlanResult plan(const GridMap& map, Cell start, Cell goal, const PlannerConfig& config) {
  config.validate();
  if (!map.in_bounds(start) || !map.in_bounds(goal)) {
    std::ostringstream msg;
    msg << "start " << start << " or goal " << goal << " outside " << map.width() << "x" << map.height() << " map";
    throw ContractViolation(msg.str());
  }

  PlanResult result;
  auto& report = result.report;
  report.mode = config.mode;
  report.threads = config.effective_threads();
  report.spec_depth = config.mode == Mode::kSpeculative ? config.spec_depth : 0;
  report.epsilon = config.epsilon;

  const auto t0 = std::chrono::steady_clock::now();
  CollisionStatusStore store(map);
  ExpansionEngine engine(map, store, config, report);
  SearchTables tables(map);
  OpenList open(config.tie_break);

  const auto start_status = find_collision(store, map, start, Provenance::kNonSpeculative, config.checker);
  ++report.nonspec_checks;
  report.virtual_time += config.checker.virtual_cost;
  if (start_status == CollisionStatus::kCollision) {
    std::ostringstream msg;
    msg << "start cell " << start << " is blocked";
    throw StartBlocked(msg.str());
  }

  tables.g[map.index(start)] = 0.0;
  open.push(start, 0.0, euclidean_h(start, goal), config.epsilon, std::nullopt);

  result.status = RunStatus::kNoPath;
  while (auto node = pop_expand(open, tables, map)) {
    result.expansion_trace.push_back(node->cell);
    ++report.expansions;
    if (node->cell == goal) {
      accrue_expansion_time(report, 0, 0, config.clock());
      result.status = RunStatus::kFound;
      result.path = reconstruct_path(goal, tables, map);
      result.cost = node->g;
      report.path_cost = node->g;
      break;
    }
    result.expansions.push_back(engine.resolve_neighbors(node->cell, node->parent));
    relax_neighbors(*node, map, store, open, tables, goal, config);
  }

  report.status = result.status;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.store.known_cells = store.count(CollisionStatus::kFree) + store.count(CollisionStatus::kCollision);
  result.store.max_checks_per_cell = store.max_check_count();
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.cell_at(i);
    const auto s = store.status(c);
    if (s != CollisionStatus::kUnknown && (s == CollisionStatus::kCollision) != map.blocked(c))
      ++result.store.ground_truth_mismatches;
  }
  return result;
}

void write_trace(std::ostream& out, std::span<const Cell> trace) {
  for (Cell c : trace) out << c.x << ',' << c.y << '\n';
}

}  // namespace specpath
