#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specpath/grid_world.hpp"

namespace specpath {

// One line of a movingai .scen file.
struct ScenarioEntry {
  int bucket = 0;
  std::string map;
  int width = 0;
  int height = 0;
  Cell start;
  Cell goal;
  double optimal_length = 0.0;
};

// Accepts an optional `version N` first line; fields are whitespace separated.
std::vector<ScenarioEntry> parse_scen(std::istream& in);
std::vector<ScenarioEntry> load_scen(const std::filesystem::path& path);

struct ScenarioSpec {
  std::filesystem::path map_path;
  Cell start;
  Cell goal;
  std::optional<std::filesystem::path> scen_file;
  std::optional<std::size_t> scen_index;

  // Stable, comma-free identifier used in report rows, e.g. "0:0-31:31".
  std::string label() const;
};

std::string scenario_label(Cell start, Cell goal);

// "X,Y" -> Cell. Throws ContractViolation on malformed text.
Cell parse_cell(std::string_view text);

}  // namespace specpath
