#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "specpath/errors.hpp"
#include "specpath/sweep.hpp"
#include "support/oracles.hpp"

using namespace specpath;
namespace t = specpath::testing;

namespace {

SweepMapSpec bundled(const char* name, Cell start, Cell goal) {
  return {t::data_path(std::string("maps/") + name + ".map"), {{start, goal}}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

const SweepRow& find_row(const std::vector<SweepRow>& rows, Mode mode, int threads, int depth = 0) {
  for (const auto& r : rows)
    if (r.report.mode == mode && r.report.threads == threads && r.report.spec_depth == depth) return r;
  FAIL("row not found");
  return rows.front();
}

}  // namespace

TEST_CASE("one map, all modes, six thread counts gives 11 rows") {
  SweepSpec spec;
  spec.maps = {bundled("open_field", {0, 0}, {31, 31})};
  const auto rows = run_sweep(spec);
  CHECK(rows.size() == 11);
  CHECK(rows.front().report.mode == Mode::kSingle);
  CHECK(*rows.front().normalized_time == 1.0);

  const auto& p8 = find_row(rows, Mode::kParallel, 8);
  const auto& p32 = find_row(rows, Mode::kParallel, 32);
  CHECK(p8.report.virtual_time == p32.report.virtual_time);

  const auto& s32 = find_row(rows, Mode::kSpeculative, 32, 4);
  CHECK(rows.front().report.virtual_time / s32.report.virtual_time >= 5.0);
  CHECK(*s32.normalized_time == doctest::Approx(232.0 / 3882.0));
}

TEST_CASE("four maps, six thread counts, two modes plus baselines gives 52 rows") {
  SweepSpec spec;
  spec.maps = {bundled("open_field", {0, 0}, {31, 31}), bundled("corridor", {1, 2}, {1, 20}),
               bundled("spiral", {0, 0}, {15, 15}), bundled("random30", {0, 0}, {31, 31})};
  spec.threads = {2, 4, 8, 16, 24, 32};
  const auto rows = run_sweep(spec);
  CHECK(rows.size() == 52);
  for (const auto& r : rows) CHECK(r.report.status == RunStatus::kFound);
}

TEST_CASE("baseline runs even when SINGLE is not requested") {
  SweepSpec spec;
  spec.maps = {bundled("open_field", {0, 0}, {31, 31})};
  spec.modes = {Mode::kParallel};
  spec.threads = {8};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].normalized_time == doctest::Approx(832.0 / 3882.0));
}

TEST_CASE("failed runs become rows and the sweep continues") {
  SweepSpec spec;
  spec.maps = {{t::data_path("maps/corridor.map"), {{{0, 0}, {1, 2}}, {{1, 2}, {1, 20}}}}};
  spec.threads = {4};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].report.status == RunStatus::kFailed);
    CHECK_FALSE(rows[static_cast<std::size_t>(i)].normalized_time);
    CHECK(rows[static_cast<std::size_t>(i)].error.find("blocked") != std::string::npos);
  }
  for (int i = 3; i < 6; ++i) CHECK(rows[static_cast<std::size_t>(i)].report.status == RunStatus::kFound);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(run_sweep(spec), ContractViolation);
  spec.maps = {bundled("open_field", {0, 0}, {31, 31})};
  spec.threads = {0};
  CHECK_THROWS_AS(run_sweep(spec), ContractViolation);
  spec.threads = {2};
  spec.spec_depths = {};
  CHECK_THROWS_AS(run_sweep(spec), ContractViolation);
  spec.spec_depths = {4};
  spec.checker.busy_iterations = 10;
  CHECK_THROWS_AS(run_sweep(spec), ContractViolation);
  spec.checker.busy_iterations = 0;
  spec.maps = {{t::data_path("fixtures/bad_char.map"), {{{0, 0}, {1, 1}}}}};
  CHECK_THROWS_AS(run_sweep(spec), ParseError);
}

TEST_CASE("CSV output is fixed-order and byte-identical across reruns") {
  SweepSpec spec;
  spec.maps = {bundled("corridor", {1, 2}, {1, 20}), bundled("spiral", {0, 0}, {15, 15})};
  spec.threads = {2, 8, 32};
  spec.spec_depths = {1, 4};
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_sweep(spec), ClockKind::kVirtual);
  write_csv(b, run_sweep(spec), ClockKind::kVirtual);
  CHECK(a.str() == b.str());

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "map,scenario,mode,threads,spec_depth,epsilon,expansions,nonspec_checks,spec_checks,used_spec_checks,"
        "accuracy_pct,virtual_time,wall_time_s,normalized_time,path_cost,status");
  std::string first;
  std::getline(lines, first);
  CHECK(first == "corridor.map,1:2-1:20,single,1,0,1,477,866,0,0,,22127,,1,178.9705627,found");
  for (std::string line; std::getline(lines, line);) CHECK(split(line, ',').size() == 16);
}

TEST_CASE("JSON mirror uses the CSV field names in order") {
  SweepSpec spec;
  spec.maps = {bundled("open_field", {0, 0}, {31, 31})};
  spec.threads = {32};
  std::ostringstream out;
  write_json(out, run_sweep(spec), ClockKind::kVirtual);
  const auto doc = nlohmann::ordered_json::parse(out.str());
  REQUIRE(doc.size() == 3);
  const auto fields = split(kCsvHeader, ',');
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc[0].items()) keys.push_back(k);
  CHECK(keys == fields);
  CHECK(doc[0]["accuracy_pct"].is_null());
  CHECK(doc[0]["wall_time_s"].is_null());
  CHECK(doc[2]["mode"] == "speculative");
  CHECK(doc[2]["accuracy_pct"].get<double>() == 100.0);
  CHECK(doc[2]["virtual_time"].get<double>() == 232.0);
}

TEST_CASE("wall clock sweep reports wall time and identical counters") {
  SweepSpec spec;
  spec.maps = {bundled("open_field", {0, 0}, {8, 8})};
  spec.threads = {4};
  spec.clock = ClockKind::kWall;
  spec.checker.busy_iterations = 1000;
  spec.trials = 2;
  const auto a = run_sweep(spec);
  const auto b = run_sweep(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].report.expansions == b[i].report.expansions);
    CHECK(a[i].report.spec_checks == b[i].report.spec_checks);
    CHECK(a[i].report.virtual_time == b[i].report.virtual_time);
    CHECK(a[i].report.wall_time > 0.0);
  }
  std::ostringstream out;
  write_csv(out, a, ClockKind::kWall);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK_FALSE(split(line, ',')[12].empty());
}
