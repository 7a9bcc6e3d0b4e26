#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "specpath/collision.hpp"
#include "specpath/config.hpp"
#include "specpath/grid_world.hpp"
#include "specpath/metrics.hpp"
#include "specpath/worker_pool.hpp"

namespace specpath {

// Step from a node's parent to the node.
struct Direction {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// Collision-checking work for one expansion. Every cell appears in at most one task.
struct ExpansionBatch {
  std::vector<std::vector<Cell>> nonspec_tasks;  // one list per non-speculative worker
  std::vector<Cell> spec_tasks;                  // one cell per speculative worker

  std::size_t worker_count() const noexcept { return nonspec_tasks.size() + spec_tasks.size(); }
  bool empty() const noexcept { return worker_count() == 0; }
};

struct BatchOutcome {
  std::uint64_t nonspec_checks = 0;
  std::uint64_t spec_checks = 0;
};

// What one expansion did, for traces and property checks.
struct ExpansionRecord {
  Cell cell;
  std::uint32_t unknown_neighbors = 0;
  std::uint32_t nonspec_workers = 0;
  std::uint32_t spec_tasks = 0;
  std::uint64_t known_after = 0;
  // Virtual-time length of the non-speculative and speculative parts of the batch.
  double nonspec_makespan = 0.0;
  double spec_makespan = 0.0;
};

// In-bounds immediate neighbors of `exp` whose status is UNKNOWN, in canonical order.
std::vector<Cell> get_unknown_neighbors(Cell exp, const CollisionStatusStore& store, const GridMap& map);

// Splits `unknown` into min(threads, |unknown|) contiguous lists whose sizes differ by at most
// one, larger lists first.
std::vector<std::vector<Cell>> assign_workload(std::span<const Cell> unknown, int threads);

std::optional<Direction> direction_of(Cell exp, std::optional<Cell> parent) noexcept;

// Walks exp + k*dir for k = 1..depth and emits one single-cell task for every UNKNOWN neighbor
// of each lookahead node that it can claim, until `idle` tasks were emitted or the ray leaves
// the map.
std::vector<Cell> speculate(Cell exp, Direction dir, int idle, int depth, const CollisionStatusStore& store,
                            const GridMap& map, BatchClaims& claims);

// Runs every task of the batch (worker i takes task i) and waits for all of them. An empty
// batch returns without touching the pool.
BatchOutcome run_batch(const ExpansionBatch& batch, CollisionStatusStore& store, const GridMap& map,
                       const CheckerConfig& checker, WorkerPool& pool);

// Per-expansion orchestration shared by all three modes.
class ExpansionEngine {
 public:
  ExpansionEngine(const GridMap& map, CollisionStatusStore& store, const PlannerConfig& config, RunReport& report);

  // Builds the batch for `exp` (claims included) without running it.
  ExpansionBatch build_batch(Cell exp, std::optional<Cell> parent, std::span<const Cell> unknown);

  // Makes the status of every immediate neighbor of `exp` known, updating the report.
  ExpansionRecord resolve_neighbors(Cell exp, std::optional<Cell> parent);

 private:
  const GridMap& map_;
  CollisionStatusStore& store_;
  const PlannerConfig& config_;
  RunReport& report_;
  BatchClaims claims_;
  std::unique_ptr<WorkerPool> pool_;
};

}  // namespace specpath
