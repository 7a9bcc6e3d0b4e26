#pragma once

#include <optional>

#include "specpath/grid_world.hpp"

namespace specpath {

// Plain Dijkstra over the ground-truth occupancy, sharing nothing with the planner besides the
// map. Returns the optimal cost, or nothing when goal is unreachable or either endpoint is blocked.
std::optional<double> reference_cost(const GridMap& map, Cell start, Cell goal, bool corner_cutting = true);

}  // namespace specpath
