#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "specpath/collision.hpp"
#include "specpath/config.hpp"
#include "specpath/grid_world.hpp"
#include "specpath/metrics.hpp"
#include "specpath/speculative_engine.hpp"

namespace specpath {

struct SearchNode {
  Cell cell;
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;  // g + epsilon * h
  std::optional<Cell> parent;
  std::uint64_t seq = 0;
};

// Min-priority queue keyed by (f, h, seq). Duplicate cells may coexist; stale entries are
// dropped at pop time.
class OpenList {
 public:
  explicit OpenList(TieBreak tie_break = TieBreak::kStandard) : heap_(Before{tie_break}) {}

  // Assigns the next insertion sequence number.
  void push(Cell cell, double g, double h, double epsilon, std::optional<Cell> parent);
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  const SearchNode& top() const { return heap_.top(); }
  SearchNode pop();

 private:
  struct Before {
    TieBreak tie_break;
    // priority_queue keeps the "largest" on top, so this answers "a comes after b".
    bool operator()(const SearchNode& a, const SearchNode& b) const noexcept {
      if (a.f != b.f) return a.f > b.f;
      if (a.h != b.h) return a.h > b.h;
      return tie_break == TieBreak::kStandard ? a.seq > b.seq : a.seq < b.seq;
    }
  };

  std::priority_queue<SearchNode, std::vector<SearchNode>, Before> heap_;
  std::uint64_t next_seq_ = 0;
};

// Best-known g, parent links and closed flags, indexed like the map.
struct SearchTables {
  explicit SearchTables(const GridMap& map);

  std::vector<double> g;
  std::vector<std::int64_t> parent;  // -1 for none
  std::vector<std::uint8_t> closed;
};

// Pops the best entry whose cell is not closed yet and closes it; g and parent come from the
// tables. Empty once only stale entries remain.
std::optional<SearchNode> pop_expand(OpenList& open, SearchTables& tables, const GridMap& map);

// Pushes every FREE, open neighbor of `exp` whose g improves. All immediate neighbors must have
// a known status. Returns the number of pushes.
int relax_neighbors(const SearchNode& exp, const GridMap& map, const CollisionStatusStore& store, OpenList& open,
                    SearchTables& tables, Cell goal, const PlannerConfig& config);

// Follows parent links back from `goal` and returns the start-to-goal path.
std::vector<Cell> reconstruct_path(Cell goal, const SearchTables& tables, const GridMap& map);

// End-of-run audit of the collision store.
struct StoreSummary {
  std::size_t known_cells = 0;
  std::uint32_t max_checks_per_cell = 0;
  std::size_t ground_truth_mismatches = 0;
};

struct PlanResult {
  RunStatus status = RunStatus::kFailed;
  std::vector<Cell> path;
  double cost = 0.0;
  std::vector<Cell> expansion_trace;
  std::vector<ExpansionRecord> expansions;
  RunReport report;
  StoreSummary store;

  bool found() const noexcept { return status == RunStatus::kFound; }
};

// Weighted A* from start to goal; collision checks go through the mode's expansion engine.
// Throws ContractViolation for out-of-bounds endpoints or an invalid config, StartBlocked when the
// start cell is an obstacle.
PlanResult plan(const GridMap& map, Cell start, Cell goal, const PlannerConfig& config);

// Newline-delimited `x,y` records.
void write_trace(std::ostream& out, std::span<const Cell> trace);

}  // namespace specpath
