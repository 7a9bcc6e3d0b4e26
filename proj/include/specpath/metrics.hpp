#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "specpath/collision.hpp"
#include "specpath/config.hpp"

namespace specpath {

enum class RunStatus { kFound, kNoPath, kFailed };

std::string_view to_string(RunStatus s) noexcept;

struct RunReport {
  Mode mode = Mode::kSingle;
  int threads = 1;
  int spec_depth = 0;
  double epsilon = 1.0;
  std::uint64_t expansions = 0;
  std::uint64_t nonspec_checks = 0;
  std::uint64_t spec_checks = 0;
  std::uint64_t used_spec_checks = 0;
  double virtual_time = 0.0;
  double wall_time = 0.0;  // seconds
  std::optional<double> path_cost;
  RunStatus status = RunStatus::kFailed;
};

// Adds one expansion to the virtual clock: E0, plus C * ceil(k / t) when k unknown neighbors
// were split over t non-speculative workers. Speculative tasks never extend the batch, so they
// add nothing. Returns the new virtual time.
double accrue_expansion_time(RunReport& report, std::uint64_t unknown_neighbors, std::uint64_t nonspec_workers,
                             const VirtualClockConfig& clock);

// Counts c as a used speculative check the first time the search reads it.
void mark_used(CollisionStatusStore& store, Cell c, RunReport& report) noexcept;

// Percentage of speculative checks that were used; empty when nothing was speculated.
std::optional<double> accuracy(const RunReport& report) noexcept;

struct LaborSplit {
  double nonspec_per_expansion = 0.0;
  double spec_per_expansion = 0.0;
};

LaborSplit division_of_labor(const RunReport& report);

}  // namespace specpath
