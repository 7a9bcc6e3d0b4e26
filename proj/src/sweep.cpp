#include "specpath/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "specpath/errors.hpp"
#include "specpath/grid_world.hpp"
#include "specpath/scenario.hpp"
#include "specpath/search.hpp"

namespace specpath {

void SweepSpec::validate() const {
  if (maps.empty()) throw ContractViolation("sweep needs at least one map");
  for (const auto& m : maps)
    if (m.scenarios.empty()) throw ContractViolation("map '" + m.path.string() + "' has no scenarios");
  if (modes.empty()) throw ContractViolation("sweep needs at least one mode");
  if (threads.empty() || std::any_of(threads.begin(), threads.end(), [](int t) { return t < 1; }))
    throw ContractViolation("thread counts must be a nonempty list of values >= 1");
  if (spec_depths.empty() || std::any_of(spec_depths.begin(), spec_depths.end(), [](int s) { return s < 1; }))
    throw ContractViolation("speculation depths must be a nonempty list of values >= 1");
  if (trials < 1) throw ContractViolation("trials must be at least 1");
  if (clock == ClockKind::kVirtual && checker.busy_iterations != 0)
    throw ContractViolation("the virtual clock runs with the instant checker");
}

namespace {

SweepRow execute(const GridMap& map, const std::string& map_name, Cell start, Cell goal, const PlannerConfig& config,
                 int trials) {
  SweepRow row;
  row.map = map_name;
  row.scenario = scenario_label(start, goal);
  row.report.mode = config.mode;
  row.report.threads = config.effective_threads();
  row.report.spec_depth = config.mode == Mode::kSpeculative ? config.spec_depth : 0;
  row.report.epsilon = config.epsilon;
  try {
    for (int t = 0; t < trials; ++t) {
      auto result = plan(map, start, goal, config);
      if (t == 0 || result.report.wall_time < row.report.wall_time) row.report = result.report;
    }
  } catch (const std::exception& e) {
    row.report.status = RunStatus::kFailed;
    row.error = e.what();
  }
  return row;
}

bool contains(const std::vector<Mode>& modes, Mode m) { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<GridMap> maps;
  maps.reserve(spec.maps.size());
  for (const auto& m : spec.maps) maps.push_back(load_map(m.path));

  const int trials = spec.clock == ClockKind::kWall ? spec.trials : 1;
  PlannerConfig base;
  base.epsilon = spec.epsilon;
  base.checker = spec.checker;
  base.expansion_overhead = spec.expansion_overhead;
  base.corner_cutting = spec.corner_cutting;

  std::vector<SweepRow> rows;
  for (std::size_t mi = 0; mi < spec.maps.size(); ++mi) {
    const auto name = spec.maps[mi].path.filename().string();
    for (const auto& [start, goal] : spec.maps[mi].scenarios) {
      const std::size_t first = rows.size();

      auto cfg = base;
      cfg.mode = Mode::kSingle;
      cfg.max_threads = 1;
      const auto baseline = execute(maps[mi], name, start, goal, cfg, trials);
      if (contains(spec.modes, Mode::kSingle)) rows.push_back(baseline);

      for (Mode mode : {Mode::kParallel, Mode::kSpeculative}) {
        if (!contains(spec.modes, mode)) continue;
        for (int threads : spec.threads) {
          if (threads < 2) continue;
          cfg.mode = mode;
          cfg.max_threads = threads;
          if (mode == Mode::kParallel) {
            rows.push_back(execute(maps[mi], name, start, goal, cfg, trials));
            continue;
          }
          for (int depth : spec.spec_depths) {
            cfg.spec_depth = depth;
            rows.push_back(execute(maps[mi], name, start, goal, cfg, trials));
          }
        }
      }

      if (baseline.report.status == RunStatus::kFailed) continue;
      const double base_time =
          spec.clock == ClockKind::kVirtual ? baseline.report.virtual_time : baseline.report.wall_time;
      for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& r = rows[i].report;
        if (r.status == RunStatus::kFailed || base_time <= 0.0) continue;
        rows[i].normalized_time = (spec.clock == ClockKind::kVirtual ? r.virtual_time : r.wall_time) / base_time;
      }
    }
  }
  return rows;
}

namespace {

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string seconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const SweepRow> rows, ClockKind clock) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    const auto acc = accuracy(r);
    out << row.map << ',' << row.scenario << ',' << to_string(r.mode) << ',' << r.threads << ',' << r.spec_depth << ','
        << real(r.epsilon) << ',' << r.expansions << ',' << r.nonspec_checks << ',' << r.spec_checks << ','
        << r.used_spec_checks << ',' << (acc ? real(*acc) : "") << ',' << real(r.virtual_time) << ','
        << (clock == ClockKind::kWall ? seconds(r.wall_time) : "") << ','
        << (row.normalized_time ? real(*row.normalized_time) : "") << ','
        << (r.path_cost ? real(*r.path_cost) : "") << ',' << to_string(r.status) << '\n';
  }
}

nlohmann::ordered_json to_json(const SweepRow& row, ClockKind clock) {
  using json = nlohmann::ordered_json;
  const auto& r = row.report;
  const auto acc = accuracy(r);
  json j;
  j["map"] = row.map;
  j["scenario"] = row.scenario;
  j["mode"] = std::string(to_string(r.mode));
  j["threads"] = r.threads;
  j["spec_depth"] = r.spec_depth;
  j["epsilon"] = r.epsilon;
  j["expansions"] = r.expansions;
  j["nonspec_checks"] = r.nonspec_checks;
  j["spec_checks"] = r.spec_checks;
  j["used_spec_checks"] = r.used_spec_checks;
  j["accuracy_pct"] = acc ? json(*acc) : json(nullptr);
  j["virtual_time"] = r.virtual_time;
  j["wall_time_s"] = clock == ClockKind::kWall ? json(r.wall_time) : json(nullptr);
  j["normalized_time"] = row.normalized_time ? json(*row.normalized_time) : json(nullptr);
  j["path_cost"] = r.path_cost ? json(*r.path_cost) : json(nullptr);
  j["status"] = std::string(to_string(r.status));
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

void write_json(std::ostream& out, std::span<const SweepRow> rows, ClockKind clock) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) doc.push_back(to_json(row, clock));
  out << doc.dump(2) << '\n';
}

}  // namespace specpath
