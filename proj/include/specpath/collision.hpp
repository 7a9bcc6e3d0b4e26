#pragma once

#include <atomic>
#include <cstdint>
#include <string_view>
#include <vector>

#include "specpath/grid_world.hpp"

namespace specpath {

enum class CollisionStatus : std::uint8_t { kUnknown, kFree, kCollision };
enum class Provenance : std::uint8_t { kNone, kNonSpeculative, kSpeculative };

std::string_view to_string(CollisionStatus s) noexcept;
std::string_view to_string(Provenance p) noexcept;

struct CheckerConfig {
  // Busy-work iterations per check; 0 is the instant checker.
  std::uint64_t busy_iterations = 0;
  // Abstract cost C of one check for the virtual clock.
  double virtual_cost = 25.0;
};

// Iterations of the busy-work loop that take roughly `milliseconds` on this machine.
std::uint64_t calibrate_busy_iterations(double milliseconds);

// Decrements a counter `iterations` times. The counter is volatile so the loop survives -O2.
void busy_work(std::uint64_t iterations) noexcept;

// Per-cell tri-state status shared by all workers of a run.
//
// Concurrent find_collision calls are safe as long as they target distinct cells; the batch
// claims guarantee that. Readers on the search thread only look at the store between joins.
class CollisionStatusStore {
 public:
  explicit CollisionStatusStore(const GridMap& map);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return status_.size(); }

  CollisionStatus status(Cell c) const noexcept { return status_[index(c)]; }
  Provenance provenance(Cell c) const noexcept { return provenance_[index(c)]; }
  // 0 for unchecked cells, otherwise the 1-based order in which the check completed its write.
  std::uint64_t sequence(Cell c) const noexcept { return sequence_[index(c)]; }
  // Number of find_collision executions that targeted c, including rejected duplicates.
  std::uint32_t check_count(Cell c) const noexcept { return checks_[index(c)]; }

  // Maintained incrementally; count() scans the whole store.
  std::size_t known_count() const noexcept { return known_.load(std::memory_order_relaxed); }
  std::size_t count(CollisionStatus s) const noexcept;
  std::uint32_t max_check_count() const noexcept;

  // Writes a status exactly once. Throws InvariantViolation on a second write.
  void record(Cell c, CollisionStatus s, Provenance p);

  // Sets the consumed flag of a speculatively checked cell. Returns true the first time only.
  bool mark_consumed(Cell c) noexcept;

 private:
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }

  int width_;
  int height_;
  std::vector<CollisionStatus> status_;
  std::vector<Provenance> provenance_;
  std::vector<std::uint64_t> sequence_;
  std::vector<std::uint32_t> checks_;
  std::vector<std::uint8_t> consumed_;
  std::atomic<std::uint64_t> next_sequence_{1};
  std::atomic<std::size_t> known_{0};
};

inline CollisionStatusStore new_store(const GridMap& map) { return CollisionStatusStore(map); }

CollisionStatus get_status(const CollisionStatusStore& store, Cell c) noexcept;

// The long-latency checker: burns the configured busy-work, then writes ground truth.
CollisionStatus find_collision(CollisionStatusStore& store, const GridMap& map, Cell c, Provenance provenance,
                               const CheckerConfig& cfg);

// Per-expansion reservation of cells so each cell gets at most one task in a batch.
// Starting a new batch is O(1): claims are epoch-stamped.
class BatchClaims {
 public:
  explicit BatchClaims(const GridMap& map);

  void begin_batch() noexcept;
  bool claim(Cell c) noexcept;
  bool claimed(Cell c) const noexcept { return stamps_[index(c)] == epoch_; }

 private:
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }

  int width_;
  std::vector<std::uint32_t> stamps_;
  std::uint32_t epoch_ = 1;
};

inline bool claim_cell(BatchClaims& claims, Cell c) noexcept { return claims.claim(c); }

}  // namespace specpath
