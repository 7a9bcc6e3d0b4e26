#include "specpath/collision.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "specpath/errors.hpp"

namespace specpath {

std::string_view to_string(CollisionStatus s) noexcept {
  switch (s) {
    case CollisionStatus::kUnknown:
      return "UNKNOWN";
    case CollisionStatus::kFree:
      return "FREE";
    case CollisionStatus::kCollision:
      return "COLLISION";
  }
  return "?";
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::kNone:
      return "NONE";
    case Provenance::kNonSpeculative:
      return "NONSPEC";
    case Provenance::kSpeculative:
      return "SPEC";
  }
  return "?";
}

void busy_work(std::uint64_t iterations) noexcept {
  volatile std::uint64_t counter = iterations;
  while (counter > 0) counter = counter - 1;
}

std::uint64_t calibrate_busy_iterations(double milliseconds) {
  if (milliseconds <= 0.0) return 0;
  using clock = std::chrono::steady_clock;
  std::uint64_t probe = 1 << 16;
  double elapsed_ms = 0.0;
  // Grow the probe until it runs long enough to time reliably.
  while (true) {
    const auto t0 = clock::now();
    busy_work(probe);
    elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    if (elapsed_ms >= 20.0 || probe >= (std::uint64_t{1} << 40)) break;
    probe *= 2;
  }
  const double per_ms = static_cast<double>(probe) / std::max(elapsed_ms, 1e-6);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(per_ms * milliseconds));
}

CollisionStatusStore::CollisionStatusStore(const GridMap& map)
    : width_(map.width()),
      height_(map.height()),
      status_(map.cell_count(), CollisionStatus::kUnknown),
      provenance_(map.cell_count(), Provenance::kNone),
      sequence_(map.cell_count(), 0),
      checks_(map.cell_count(), 0),
      consumed_(map.cell_count(), 0) {}

std::size_t CollisionStatusStore::count(CollisionStatus s) const noexcept {
  return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), s));
}

std::uint32_t CollisionStatusStore::max_check_count() const noexcept {
  return checks_.empty() ? 0 : *std::max_element(checks_.begin(), checks_.end());
}

void CollisionStatusStore::record(Cell c, CollisionStatus s, Provenance p) {
  const auto i = index(c);
  ++checks_[i];
  if (status_[i] != CollisionStatus::kUnknown) {
    std::ostringstream msg;
    msg << "duplicate collision check of " << c << " (already " << to_string(status_[i]) << " via "
        << to_string(provenance_[i]) << ")";
    throw InvariantViolation(msg.str());
  }
  status_[i] = s;
  provenance_[i] = p;
  sequence_[i] = next_sequence_.fetch_add(1, std::memory_order_relaxed);
  known_.fetch_add(1, std::memory_order_relaxed);
}

bool CollisionStatusStore::mark_consumed(Cell c) noexcept {
  const auto i = index(c);
  if (provenance_[i] != Provenance::kSpeculative || consumed_[i]) return false;
  consumed_[i] = 1;
  return true;
}

CollisionStatus get_status(const CollisionStatusStore& store, Cell c) noexcept { return store.status(c); }

CollisionStatus find_collision(CollisionStatusStore& store, const GridMap& map, Cell c, Provenance provenance,
                               const CheckerConfig& cfg) {
  if (!map.in_bounds(c)) {
    std::ostringstream msg;
    msg << "find_collision: " << c << " is out of bounds";
    throw ContractViolation(msg.str());
  }
  busy_work(cfg.busy_iterations);
  const auto status = map.blocked(c) ? CollisionStatus::kCollision : CollisionStatus::kFree;
  store.record(c, status, provenance);
  return status;
}

BatchClaims::BatchClaims(const GridMap& map) : width_(map.width()), stamps_(map.cell_count(), 0) {}

void BatchClaims::begin_batch() noexcept {
  if (++epoch_ == 0) {
    std::fill(stamps_.begin(), stamps_.end(), 0);
    epoch_ = 1;
  }
}

bool BatchClaims::claim(Cell c) noexcept {
  auto& stamp = stamps_[index(c)];
  if (stamp == epoch_) return false;
  stamp = epoch_;
  return true;
}

}  // namespace specpath
