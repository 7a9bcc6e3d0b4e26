#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "specpath/collision.hpp"

namespace specpath {

enum class Mode { kSingle, kParallel, kSpeculative };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

enum class ClockKind { kVirtual, kWall };

// Open-list tie-breaking among equal (f, h). kInvertedSequence exists only as a fault
// injection hook for the order-equality checks.
enum class TieBreak { kStandard, kInvertedSequence };

// Deterministic time accounting: E0 per expansion plus C per check on the critical path.
struct VirtualClockConfig {
  double check_cost = 25.0;        // C
  double expansion_overhead = 1.0;  // E0
};

struct PlannerConfig {
  Mode mode = Mode::kSingle;
  int max_threads = 1;  // M
  int spec_depth = 4;   // S
  double epsilon = 1.0;
  CheckerConfig checker;
  double expansion_overhead = 1.0;
  bool corner_cutting = true;
  TieBreak tie_break = TieBreak::kStandard;

  // Threads actually used: SINGLE always runs with one.
  int effective_threads() const noexcept { return mode == Mode::kSingle ? 1 : max_threads; }
  VirtualClockConfig clock() const noexcept { return {checker.virtual_cost, expansion_overhead}; }

  // Throws ContractViolation describing the first broken constraint.
  void validate() const;
};

}  // namespace specpath
