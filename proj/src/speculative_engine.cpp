#include "specpath/speculative_engine.hpp"

#include <algorithm>

#include "specpath/errors.hpp"

namespace specpath {

std::vector<Cell> get_unknown_neighbors(Cell exp, const CollisionStatusStore& store, const GridMap& map) {
  auto out = neighbors8(map, exp);
  std::erase_if(out, [&](Cell n) { return store.status(n) != CollisionStatus::kUnknown; });
  return out;
}

std::vector<std::vector<Cell>> assign_workload(std::span<const Cell> unknown, int threads) {
  if (threads < 1) throw ContractViolation("assign_workload: thread count must be at least 1");
  const std::size_t lists = std::min(static_cast<std::size_t>(threads), unknown.size());
  std::vector<std::vector<Cell>> out(lists);
  if (lists == 0) return out;
  const std::size_t base = unknown.size() / lists;
  const std::size_t extra = unknown.size() % lists;
  auto it = unknown.begin();
  for (std::size_t i = 0; i < lists; ++i) {
    const std::size_t n = base + (i < extra ? 1 : 0);
    out[i].assign(it, it + static_cast<std::ptrdiff_t>(n));
    it += static_cast<std::ptrdiff_t>(n);
  }
  return out;
}

std::optional<Direction> direction_of(Cell exp, std::optional<Cell> parent) noexcept {
  if (!parent) return std::nullopt;
  return Direction{exp.x - parent->x, exp.y - parent->y};
}

std::vector<Cell> speculate(Cell exp, Direction dir, int idle, int depth, const CollisionStatusStore& store,
                            const GridMap& map, BatchClaims& claims) {
  std::vector<Cell> tasks;
  if (dir.dx == 0 && dir.dy == 0) return tasks;
  for (int step = 1; step <= depth && idle > 0; ++step) {
    const Cell lookahead{exp.x + step * dir.dx, exp.y + step * dir.dy};
    if (!map.in_bounds(lookahead)) break;
    for (const auto& m : kMotions) {
      const Cell n{lookahead.x + m.dx, lookahead.y + m.dy};
      if (!map.in_bounds(n) || store.status(n) != CollisionStatus::kUnknown) continue;
      if (!claims.claim(n)) continue;
      tasks.push_back(n);
      if (--idle == 0) break;
    }
  }
  return tasks;
}

BatchOutcome run_batch(const ExpansionBatch& batch, CollisionStatusStore& store, const GridMap& map,
                       const CheckerConfig& checker, WorkerPool& pool) {
  BatchOutcome outcome;
  if (batch.empty()) return outcome;

  const std::size_t nonspec = batch.nonspec_tasks.size();
  std::vector<std::uint64_t> checks(batch.worker_count(), 0);
  pool.run(batch.worker_count(), [&](std::size_t i) {
    if (i < nonspec) {
      for (Cell c : batch.nonspec_tasks[i]) {
        find_collision(store, map, c, Provenance::kNonSpeculative, checker);
        ++checks[i];
      }
    } else {
      find_collision(store, map, batch.spec_tasks[i - nonspec], Provenance::kSpeculative, checker);
      ++checks[i];
    }
  });

  for (std::size_t i = 0; i < checks.size(); ++i) (i < nonspec ? outcome.nonspec_checks : outcome.spec_checks) += checks[i];
  return outcome;
}

ExpansionEngine::ExpansionEngine(const GridMap& map, CollisionStatusStore& store, const PlannerConfig& config,
                                 RunReport& report)
    : map_(map),
      store_(store),
      config_(config),
      report_(report),
      claims_(map),
      pool_(std::make_unique<WorkerPool>(config.mode == Mode::kSingle ? 0
                                                                       : static_cast<std::size_t>(config.max_threads))) {}

ExpansionBatch ExpansionEngine::build_batch(Cell exp, std::optional<Cell> parent, std::span<const Cell> unknown) {
  const int threads = config_.effective_threads();
  claims_.begin_batch();
  for (Cell c : unknown) claims_.claim(c);

  ExpansionBatch batch;
  batch.nonspec_tasks = assign_workload(unknown, threads);
  const int idle = threads - static_cast<int>(batch.nonspec_tasks.size());
  if (config_.mode == Mode::kSpeculative && idle > 0 && !unknown.empty()) {
    if (const auto dir = direction_of(exp, parent))
      batch.spec_tasks = speculate(exp, *dir, idle, config_.spec_depth, store_, map_, claims_);
  }
  return batch;
}

ExpansionRecord ExpansionEngine::resolve_neighbors(Cell exp, std::optional<Cell> parent) {
  std::vector<Cell> unknown;
  for (Cell n : neighbors8(map_, exp)) {
    mark_used(store_, n, report_);
    if (store_.status(n) == CollisionStatus::kUnknown) unknown.push_back(n);
  }

  const auto batch = build_batch(exp, parent, unknown);
  const auto outcome = run_batch(batch, store_, map_, config_.checker, *pool_);
  report_.nonspec_checks += outcome.nonspec_checks;
  report_.spec_checks += outcome.spec_checks;

  const auto clock = config_.clock();
  accrue_expansion_time(report_, unknown.size(), batch.nonspec_tasks.size(), clock);

  ExpansionRecord record;
  record.cell = exp;
  record.unknown_neighbors = static_cast<std::uint32_t>(unknown.size());
  record.nonspec_workers = static_cast<std::uint32_t>(batch.nonspec_tasks.size());
  record.spec_tasks = static_cast<std::uint32_t>(batch.spec_tasks.size());
  record.known_after = store_.known_count();
  if (!batch.nonspec_tasks.empty())
    record.nonspec_makespan = clock.check_cost * static_cast<double>(batch.nonspec_tasks.front().size());
  if (!batch.spec_tasks.empty()) record.spec_makespan = clock.check_cost;
  return record;
}

}  // namespace specpath
