#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "specpath/config.hpp"
#include "specpath/metrics.hpp"

namespace specpath {

struct SweepMapSpec {
  std::filesystem::path path;
  std::vector<std::pair<Cell, Cell>> scenarios;  // (start, goal)
};

struct SweepSpec {
  std::vector<SweepMapSpec> maps;
  std::vector<Mode> modes{Mode::kSingle, Mode::kParallel, Mode::kSpeculative};
  std::vector<int> threads{1, 2, 4, 8, 16, 32};
  std::vector<int> spec_depths{4};
  double epsilon = 1.0;
  CheckerConfig checker;  // busy_iterations must be 0 for the virtual clock
  double expansion_overhead = 1.0;
  bool corner_cutting = true;
  ClockKind clock = ClockKind::kVirtual;
  int trials = 1;  // wall clock only; the minimum wall time is reported

  // Throws ContractViolation when a list is empty or a value is out of range.
  void validate() const;
};

struct SweepRow {
  std::string map;
  std::string scenario;
  RunReport report;
  std::optional<double> normalized_time;
  std::string error;  // set when report.status is kFailed
};

// Per (map, scenario): the SINGLE baseline, then PARALLEL for every M >= 2, then SPECULATIVE for
// every M >= 2 and every S. The baseline always runs (it anchors normalized_time) but only gets a
// row when SINGLE is among the modes. A failing run becomes a failed row; the sweep continues.
// Maps that fail to parse throw before any run starts.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "map,scenario,mode,threads,spec_depth,epsilon,expansions,nonspec_checks,spec_checks,used_spec_checks,"
    "accuracy_pct,virtual_time,wall_time_s,normalized_time,path_cost,status";

// wall_time_s is left empty under the virtual clock so reruns are byte-identical.
void write_csv(std::ostream& out, std::span<const SweepRow> rows, ClockKind clock);
nlohmann::ordered_json to_json(const SweepRow& row, ClockKind clock);
void write_json(std::ostream& out, std::span<const SweepRow> rows, ClockKind clock);

}  // namespace specpath
