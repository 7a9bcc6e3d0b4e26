#include "specpath/metrics.hpp"

#include "specpath/errors.hpp"

namespace specpath {

std::string_view to_string(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::kFound:
      return "found";
    case RunStatus::kNoPath:
      return "no_path";
    case RunStatus::kFailed:
      return "failed";
  }
  return "?";
}

double accrue_expansion_time(RunReport& report, std::uint64_t unknown_neighbors, std::uint64_t nonspec_workers,
                             const VirtualClockConfig& clock) {
  report.virtual_time += clock.expansion_overhead;
  if (unknown_neighbors > 0) {
    if (nonspec_workers == 0) throw ContractViolation("accrue_expansion_time: unknown neighbors but no workers");
    const auto rounds = (unknown_neighbors + nonspec_workers - 1) / nonspec_workers;
    report.virtual_time += clock.check_cost * static_cast<double>(rounds);
  }
  return report.virtual_time;
}

void mark_used(CollisionStatusStore& store, Cell c, RunReport& report) noexcept {
  if (store.mark_consumed(c)) ++report.used_spec_checks;
}

std::optional<double> accuracy(const RunReport& report) noexcept {
  if (report.spec_checks == 0) return std::nullopt;
  return 100.0 * static_cast<double>(report.used_spec_checks) / static_cast<double>(report.spec_checks);
}

LaborSplit division_of_labor(const RunReport& report) {
  if (report.expansions == 0) throw ContractViolation("division_of_labor: report has no expansions");
  const auto e = static_cast<double>(report.expansions);
  return {static_cast<double>(report.nonspec_checks) / e, static_cast<double>(report.spec_checks) / e};
}

}  // namespace specpath
