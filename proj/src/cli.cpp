#include "specpath/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "specpath/errors.hpp"
#include "specpath/reference_dijkstra.hpp"
#include "specpath/scenario.hpp"
#include "specpath/search.hpp"
#include "specpath/sweep.hpp"

namespace specpath {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultThreads = 32;

struct CheckOptions {
  std::string clock = "virtual";
  double check_cost = 25.0;
  double latency_ms = 25.0;
  double overhead = 1.0;
  double epsilon = 1.0;
  bool no_corner_cutting = false;
};

void add_check_options(CLI::App* cmd, CheckOptions& o) {
  cmd->add_option("--epsilon", o.epsilon, "Heuristic weight (>= 1)")->capture_default_str();
  cmd->add_option("--clock", o.clock, "virtual | wall")->check(CLI::IsMember({"virtual", "wall"}))->capture_default_str();
  cmd->add_option("--check-cost", o.check_cost, "Virtual cost C of one collision check")->capture_default_str();
  cmd->add_option("--check-latency-ms", o.latency_ms, "Simulated check latency under the wall clock")
      ->capture_default_str();
  cmd->add_option("--overhead", o.overhead, "Virtual cost E0 of one expansion")->capture_default_str();
  cmd->add_flag("--no-corner-cutting", o.no_corner_cutting, "Diagonal moves need both adjacent cardinal cells free");
}

ClockKind clock_of(const CheckOptions& o) { return o.clock == "wall" ? ClockKind::kWall : ClockKind::kVirtual; }

CheckerConfig make_checker(const CheckOptions& o) {
  CheckerConfig c;
  c.virtual_cost = o.check_cost;
  if (clock_of(o) == ClockKind::kWall) {
    if (!(o.latency_ms >= 0.0)) throw UsageError("--check-latency-ms must be >= 0");
    c.busy_iterations = calibrate_busy_iterations(o.latency_ms);
  }
  return c;
}

std::optional<int> threads_from_env() {
  const char* v = std::getenv("SPEC_ASTAR_THREADS");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != std::string_view(v).size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw UsageError(std::string("SPEC_ASTAR_THREADS is not an integer: '") + v + "'");
  }
}

Cell cell_arg(const std::string& text, const char* flag) {
  try {
    return parse_cell(text);
  } catch (const ContractViolation& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

void require_in_bounds(const GridMap& map, Cell c, const char* what) {
  if (map.in_bounds(c)) return;
  std::ostringstream msg;
  msg << what << ' ' << c << " is outside the " << map.width() << "x" << map.height() << " map";
  throw UsageError(msg.str());
}

// "SX,SY:GX,GY"
std::pair<Cell, Cell> scenario_arg(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--scenario expects SX,SY:GX,GY, got '" + text + "'");
  return {cell_arg(text.substr(0, colon), "--scenario"), cell_arg(text.substr(colon + 1), "--scenario")};
}

// Pairs every map with the inline scenarios plus the .scen entries that name it.
std::vector<SweepMapSpec> collect_maps(const std::vector<std::string>& maps, const std::vector<std::string>& scenarios,
                                       const std::vector<std::string>& scen_files) {
  if (maps.empty()) throw UsageError("at least one --map is required");
  std::vector<std::pair<Cell, Cell>> inline_pairs;
  for (const auto& s : scenarios) inline_pairs.push_back(scenario_arg(s));
  std::vector<ScenarioEntry> entries;
  for (const auto& f : scen_files) {
    auto e = load_scen(f);
    entries.insert(entries.end(), e.begin(), e.end());
  }

  std::vector<SweepMapSpec> out;
  for (const auto& m : maps) {
    SweepMapSpec spec{m, inline_pairs};
    const auto name = std::filesystem::path(m).filename().string();
    for (const auto& e : entries)
      if (std::filesystem::path(e.map).filename().string() == name) spec.scenarios.emplace_back(e.start, e.goal);
    if (spec.scenarios.empty()) throw UsageError("no scenario for map '" + m + "' (use --scenario or --scen)");
    out.push_back(std::move(spec));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// plan

struct PlanOptions {
  CheckOptions check;
  std::string map;
  std::string start;
  std::string goal;
  std::string scen;
  std::size_t scen_index = 0;
  std::string mode = "single";
  int threads = 0;
  int spec_depth = 4;
  std::string emit = "csv";
  std::string trace;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* scen_index_opt = nullptr;
};

int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  const auto map = load_map(o.map);

  Cell start;
  Cell goal;
  if (!o.scen.empty()) {
    if (!o.start.empty() || !o.goal.empty()) throw UsageError("use either --scen or --start/--goal");
    const auto entries = load_scen(o.scen);
    if (o.scen_index >= entries.size())
      throw UsageError("--scen-index " + std::to_string(o.scen_index) + " out of range (" +
                       std::to_string(entries.size()) + " entries)");
    start = entries[o.scen_index].start;
    goal = entries[o.scen_index].goal;
  } else {
    if (o.start.empty() || o.goal.empty()) throw UsageError("--start and --goal are required (or --scen)");
    start = cell_arg(o.start, "--start");
    goal = cell_arg(o.goal, "--goal");
  }
  require_in_bounds(map, start, "start");
  require_in_bounds(map, goal, "goal");

  PlannerConfig cfg;
  cfg.mode = *parse_mode(o.mode);
  if (o.threads_opt->count() > 0)
    cfg.max_threads = o.threads;
  else if (auto env = threads_from_env())
    cfg.max_threads = *env;
  else
    cfg.max_threads = cfg.mode == Mode::kSingle ? 1 : kDefaultThreads;
  cfg.spec_depth = o.spec_depth;
  cfg.epsilon = o.check.epsilon;
  cfg.expansion_overhead = o.check.overhead;
  cfg.corner_cutting = !o.check.no_corner_cutting;
  cfg.checker.virtual_cost = o.check.check_cost;
  try {
    cfg.validate();
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  cfg.checker = make_checker(o.check);

  const auto result = plan(map, start, goal, cfg);

  if (!o.trace.empty()) {
    std::ofstream trace(o.trace);
    if (!trace) throw std::runtime_error("cannot write trace file '" + o.trace + "'");
    write_trace(trace, result.expansion_trace);
  }

  SweepRow row{std::filesystem::path(o.map).filename().string(), scenario_label(start, goal), result.report,
               std::nullopt, {}};
  const auto clock = clock_of(o.check);
  if (o.emit == "json") {
    auto j = to_json(row, clock);
    auto path = nlohmann::ordered_json::array();
    for (Cell c : result.path) path.push_back({c.x, c.y});
    j["path"] = std::move(path);
    out << j.dump(2) << '\n';
  } else {
    write_csv(out, std::span<const SweepRow>(&row, 1), clock);
  }
  if (!result.found()) err << "no path from " << start << " to " << goal << '\n';
  return result.found() ? kExitPathFound : kExitNoPath;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepOptions {
  CheckOptions check;
  std::string config;
  std::vector<std::string> maps;
  std::vector<std::string> scenarios;
  std::vector<std::string> scens;
  std::vector<std::string> modes{"single", "parallel", "speculative"};
  std::vector<int> threads{1, 2, 4, 8, 16, 32};
  std::vector<int> spec_depths{4};
  int trials = 1;
  std::string out;
  std::string emit = "csv";
  CLI::Option* modes_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* depths_opt = nullptr;
};

std::vector<Mode> parse_modes(const std::vector<std::string>& names) {
  std::vector<Mode> out;
  for (const auto& n : names) {
    auto m = parse_mode(n);
    if (!m) throw UsageError("unknown mode '" + n + "'");
    out.push_back(*m);
  }
  return out;
}

// Sweep description from a JSON file; relative map paths resolve against the file's directory.
SweepSpec load_sweep_config(const std::string& path, CheckOptions& check, int& trials) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open sweep config '" + path + "'");
  const auto j = nlohmann::json::parse(in);
  const auto dir = std::filesystem::path(path).parent_path();

  SweepSpec spec;
  for (const auto& m : j.at("maps")) {
    SweepMapSpec ms;
    std::filesystem::path p = m.at("path").get<std::string>();
    ms.path = p.is_absolute() ? p : dir / p;
    for (const auto& s : m.at("scenarios")) {
      const auto v = s.get<std::vector<int>>();
      if (v.size() != 4) throw ParseError(0, "scenario must be [sx, sy, gx, gy]");
      ms.scenarios.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
    spec.maps.push_back(std::move(ms));
  }
  if (j.contains("modes")) spec.modes = parse_modes(j["modes"].get<std::vector<std::string>>());
  if (j.contains("threads")) spec.threads = j["threads"].get<std::vector<int>>();
  if (j.contains("spec_depths")) spec.spec_depths = j["spec_depths"].get<std::vector<int>>();
  check.epsilon = j.value("epsilon", check.epsilon);
  check.clock = j.value("clock", check.clock);
  check.check_cost = j.value("check_cost", check.check_cost);
  check.latency_ms = j.value("check_latency_ms", check.latency_ms);
  check.overhead = j.value("expansion_overhead", check.overhead);
  check.no_corner_cutting = !j.value("corner_cutting", !check.no_corner_cutting);
  trials = j.value("trials", trials);
  if (check.clock != "virtual" && check.clock != "wall") throw ParseError(0, "clock must be virtual or wall");
  return spec;
}

int cmd_sweep(SweepOptions o, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  if (!o.config.empty()) {
    spec = load_sweep_config(o.config, o.check, o.trials);
    if (!o.maps.empty()) {
      auto extra = collect_maps(o.maps, o.scenarios, o.scens);
      spec.maps.insert(spec.maps.end(), extra.begin(), extra.end());
    }
  } else {
    spec.maps = collect_maps(o.maps, o.scenarios, o.scens);
  }
  if (o.config.empty() || o.modes_opt->count() > 0) spec.modes = parse_modes(o.modes);
  if (o.config.empty() || o.threads_opt->count() > 0) spec.threads = o.threads;
  if (o.config.empty() || o.depths_opt->count() > 0) spec.spec_depths = o.spec_depths;
  spec.epsilon = o.check.epsilon;
  spec.expansion_overhead = o.check.overhead;
  spec.corner_cutting = !o.check.no_corner_cutting;
  spec.clock = clock_of(o.check);
  spec.trials = o.trials;
  spec.checker.virtual_cost = o.check.check_cost;
  try {
    spec.validate();
    PlannerConfig probe;
    probe.epsilon = spec.epsilon;
    probe.expansion_overhead = spec.expansion_overhead;
    probe.checker.virtual_cost = spec.checker.virtual_cost;
    probe.validate();
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  spec.checker = make_checker(o.check);

  const auto rows = run_sweep(spec);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
    sink = &file;
  }
  if (o.emit == "json")
    write_json(*sink, rows, spec.clock);
  else
    write_csv(*sink, rows, spec.clock);

  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (r.report.status != RunStatus::kFailed) continue;
    ++failed;
    err << "run failed: " << r.map << ' ' << r.scenario << ' ' << to_string(r.report.mode) << " M="
        << r.report.threads << ": " << r.error << '\n';
  }
  return failed < rows.size() ? kExitPathFound : kExitError;
}

// ---------------------------------------------------------------------------------------------
// verify

struct VerifyOptions {
  CheckOptions check;
  std::vector<std::string> maps;
  std::vector<std::string> scenarios;
  std::vector<std::string> scens;
  std::vector<int> parallel_threads{2, 8, 32};
  std::vector<int> spec_threads{8, 16, 32};
  std::vector<int> spec_depths{1, 2, 4, 8};
  bool inject_fault = false;
};

std::optional<std::size_t> first_divergence(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

std::string fmt_cost(std::optional<double> c) {
  if (!c) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << *c;
  return s.str();
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto maps = collect_maps(o.maps, o.scenarios, o.scens);
  if (!(o.check.epsilon >= 1.0)) throw UsageError("epsilon must be >= 1");

  PlannerConfig base;
  base.epsilon = o.check.epsilon;
  base.corner_cutting = !o.check.no_corner_cutting;
  base.expansion_overhead = o.check.overhead;
  base.checker.virtual_cost = o.check.check_cost;

  std::optional<std::string> first_failure;
  std::size_t checked = 0;
  std::size_t failed = 0;
  out << std::left << std::setw(22) << "map" << std::setw(14) << "scenario" << std::setw(13) << "mode" << std::setw(4)
      << "M" << std::setw(4) << "S" << std::setw(11) << "expansions" << std::setw(14) << "cost" << std::setw(14)
      << "oracle" << "result\n";

  for (const auto& ms : maps) {
    const auto map = load_map(ms.path);
    const auto name = ms.path.filename().string();
    for (const auto& [start, goal] : ms.scenarios) {
      require_in_bounds(map, start, "start");
      require_in_bounds(map, goal, "goal");
      const auto oracle = reference_cost(map, start, goal, base.corner_cutting);

      auto cfg = base;
      cfg.mode = Mode::kSingle;
      cfg.max_threads = 1;
      const auto reference = plan(map, start, goal, cfg);

      std::vector<PlannerConfig> configs{cfg};
      for (int m : o.parallel_threads) {
        auto c = base;
        c.mode = Mode::kParallel;
        c.max_threads = m;
        configs.push_back(c);
      }
      for (int m : o.spec_threads)
        for (int s : o.spec_depths) {
          auto c = base;
          c.mode = Mode::kSpeculative;
          c.max_threads = m;
          c.spec_depth = s;
          configs.push_back(c);
        }

      for (auto c : configs) {
        if (o.inject_fault && c.mode != Mode::kSingle) c.tie_break = TieBreak::kInvertedSequence;
        try {
          c.validate();
        } catch (const ContractViolation& e) {
          throw UsageError(e.what());
        }
        const auto r = c.mode == Mode::kSingle ? reference : plan(map, start, goal, c);
        ++checked;

        std::string verdict = "pass";
        const auto diverge = first_divergence(reference.expansion_trace, r.expansion_trace);
        std::optional<double> cost;
        if (r.found()) cost = r.cost;
        if (diverge) {
          verdict = "FAIL trace diverges at expansion " + std::to_string(*diverge);
        } else if (cost.has_value() != oracle.has_value()) {
          verdict = "FAIL reachability disagrees with oracle";
        } else if (cost) {
          const bool ok = c.epsilon == 1.0 ? std::abs(*cost - *oracle) <= 1e-9 : *cost <= c.epsilon * *oracle + 1e-9;
          if (!ok) verdict = "FAIL cost outside bound";
        }
        if (verdict != "pass") {
          ++failed;
          if (!first_failure) {
            std::ostringstream f;
            f << name << ' ' << scenario_label(start, goal) << ' ' << to_string(c.mode) << " M="
              << c.effective_threads();
            if (c.mode == Mode::kSpeculative) f << " S=" << c.spec_depth;
            f << ": " << verdict;
            if (diverge) f << " (first divergent expansion index " << *diverge << ")";
            first_failure = f.str();
          }
        }
        out << std::left << std::setw(22) << name << std::setw(14) << scenario_label(start, goal) << std::setw(13)
            << to_string(c.mode) << std::setw(4) << c.effective_threads() << std::setw(4)
            << (c.mode == Mode::kSpeculative ? std::to_string(c.spec_depth) : "-") << std::setw(11)
            << r.expansion_trace.size() << std::setw(14) << fmt_cost(cost) << std::setw(14) << fmt_cost(oracle)
            << verdict << '\n';
      }
    }
  }

  out << checked - failed << '/' << checked << " runs passed\n";
  if (first_failure) {
    err << "verification failed: " << *first_failure << '\n';
    return kExitMismatch;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid weighted A* with parallel and speculative collision checking"};
  app.name("specpath");
  app.require_subcommand(1);

  PlanOptions plan_opts;
  auto* plan_cmd = app.add_subcommand("plan", "Plan one path and print its run report");
  plan_cmd->add_option("--map", plan_opts.map, "movingai .map file")->required();
  plan_cmd->add_option("--start", plan_opts.start, "Start cell X,Y");
  plan_cmd->add_option("--goal", plan_opts.goal, "Goal cell X,Y");
  plan_cmd->add_option("--scen", plan_opts.scen, "movingai .scen file to take start/goal from");
  plan_opts.scen_index_opt = plan_cmd->add_option("--scen-index", plan_opts.scen_index, "Entry of --scen (0-based)");
  plan_cmd->add_option("--mode", plan_opts.mode, "single | parallel | speculative")
      ->check(CLI::IsMember({"single", "parallel", "speculative"}))
      ->capture_default_str();
  plan_opts.threads_opt = plan_cmd->add_option("--threads", plan_opts.threads,
                                               "Max threads M (default: $SPEC_ASTAR_THREADS, else 32; single uses 1)");
  plan_cmd->add_option("--spec-depth", plan_opts.spec_depth, "Max forward speculation S")->capture_default_str();
  plan_cmd->add_option("--emit", plan_opts.emit, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  plan_cmd->add_option("--trace", plan_opts.trace, "Write the expansion trace (x,y per line) here");
  add_check_options(plan_cmd, plan_opts.check);

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a mode x threads x depth sweep and write CSV/JSON rows");
  sweep_cmd->add_option("--config", sweep_opts.config, "JSON sweep description");
  sweep_cmd->add_option("--map", sweep_opts.maps, "movingai .map file (repeatable)");
  sweep_cmd->add_option("--scenario", sweep_opts.scenarios, "SX,SY:GX,GY applied to every map (repeatable)");
  sweep_cmd->add_option("--scen", sweep_opts.scens, "movingai .scen file (repeatable)");
  sweep_opts.modes_opt = sweep_cmd->add_option("--modes", sweep_opts.modes, "Modes to run")->delimiter(',');
  sweep_opts.threads_opt = sweep_cmd->add_option("--threads", sweep_opts.threads, "Thread counts")->delimiter(',');
  sweep_opts.depths_opt =
      sweep_cmd->add_option("--spec-depths", sweep_opts.spec_depths, "Speculation depths")->delimiter(',');
  sweep_cmd->add_option("--trials", sweep_opts.trials, "Wall-clock repetitions (min reported)")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_opts.out, "Output file (default: stdout)");
  sweep_cmd->add_option("--emit", sweep_opts.emit, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_check_options(sweep_cmd, sweep_opts.check);

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Check expansion-order equality across modes and optimality");
  verify_cmd->add_option("--map", verify_opts.maps, "movingai .map file (repeatable)")->required();
  verify_cmd->add_option("--scenario", verify_opts.scenarios, "SX,SY:GX,GY applied to every map (repeatable)");
  verify_cmd->add_option("--scen", verify_opts.scens, "movingai .scen file (repeatable)");
  verify_cmd->add_option("--threads", verify_opts.parallel_threads, "Parallel thread counts")->delimiter(',');
  verify_cmd->add_option("--spec-threads", verify_opts.spec_threads, "Speculative thread counts")->delimiter(',');
  verify_cmd->add_option("--spec-depths", verify_opts.spec_depths, "Speculation depths")->delimiter(',');
  verify_cmd->add_flag("--inject-tiebreak-fault", verify_opts.inject_fault,
                       "Invert open-list tie-breaking in non-single runs (negative control)");
  add_check_options(verify_cmd, verify_opts.check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (plan_cmd->parsed()) return cmd_plan(plan_opts, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, out, err);
    return cmd_verify(verify_opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace specpath
