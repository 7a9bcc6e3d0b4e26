#include <random>
#include <set>

#include "doctest.h"
#include "specpath/errors.hpp"
#include "specpath/grid_world.hpp"
#include "support/oracles.hpp"

using namespace specpath;
using specpath::testing::data_path;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_map(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a parse error");
  return 0;
}

}  // namespace

TEST_CASE("parse_map reads a minimal movingai map") {
  const auto map = parse_map("type octile\nheight 2\nwidth 2\nmap\n.@\n..");
  CHECK(map.width() == 2);
  CHECK(map.height() == 2);
  CHECK(map.blocked({1, 0}));
  CHECK_FALSE(map.blocked({0, 0}));
  CHECK_FALSE(map.blocked({0, 1}));
  CHECK_FALSE(map.blocked({1, 1}));
  CHECK(map.blocked_count() == 1);
}

TEST_CASE("parse_map character classes") {
  const auto map = parse_map("type octile\nheight 1\nwidth 5\nmap\n.G@OT\n");
  CHECK_FALSE(map.blocked({0, 0}));
  CHECK_FALSE(map.blocked({1, 0}));
  CHECK(map.blocked({2, 0}));
  CHECK(map.blocked({3, 0}));
  CHECK(map.blocked({4, 0}));
}

TEST_CASE("parse_map tolerates CRLF and swapped width/height lines") {
  const auto map = parse_map("type octile\r\nwidth 3\r\nheight 1\r\nmap\r\n.T.\r\n");
  CHECK(map.width() == 3);
  CHECK(map.height() == 1);
  CHECK(map.blocked({1, 0}));
}

TEST_CASE("parse_map errors name the offending line") {
  CHECK(parse_error_line("type octile\nheight 3\nwidth 2\nmap\n.@\n..") == 6);
  CHECK(parse_error_line("type octile\nheight 3\nwidth 2\nmap\n.@\n..\n") == 6);
  CHECK(parse_error_line("type octile\nheight 2\nwidth 3\nmap\n...\n....\n") == 6);
  CHECK(parse_error_line("type octile\nheight 2\nwidth 2\nmap\n.X\n..\n") == 5);
  CHECK(parse_error_line("type octile\nhight 2\nwidth 2\nmap\n") == 2);
  CHECK(parse_error_line("type octile\nheight 0\nwidth 2\nmap\n") == 2);
  CHECK(parse_error_line("type octile\nheight 2\nwidth 2\nmaps\n") == 4);
  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("type octile\nheight 1\nwidth 1\nmap\n.\n.\n") == 6);
}

TEST_CASE("bundled movingai sample golden counts") {
  const auto map = load_map(data_path("maps/sample_movingai.map"));
  CHECK(map.width() == 16);
  CHECK(map.height() == 12);
  // 68 '@' + 13 'T' + 4 'O', counted by hand from the file.
  CHECK(map.blocked_count() == 85);
  CHECK(map.blocked({7, 1}));   // T
  CHECK(map.blocked({12, 3}));  // O
  CHECK_FALSE(map.blocked({3, 3}));  // G
}

TEST_CASE("malformed fixtures") {
  auto line_of = [](const char* name) -> std::size_t {
    try {
      load_map(data_path(std::string("fixtures/") + name));
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("short_rows.map") == 6);
  CHECK(line_of("long_row.map") == 6);
  CHECK(line_of("bad_char.map") == 5);
  CHECK(line_of("bad_header.map") == 2);
  CHECK(line_of("missing_map_keyword.map") == 4);
  CHECK(line_of("extra_rows.map") == 7);
  CHECK_THROWS_AS(load_map(data_path("fixtures/does_not_exist.map")), ParseError);
}

TEST_CASE("movingai round trip normalizes to . and @") {
  const auto original = load_map(data_path("maps/sample_movingai.map"));
  const auto text = to_movingai(original);
  CHECK(text.find('T') == std::string::npos);
  CHECK(text.find('O') == std::string::npos);
  CHECK(text.find('G') == std::string::npos);
  CHECK(to_movingai(parse_map(text)) == text);

  for (std::uint32_t seed = 1; seed <= 25; ++seed) {
    const auto m = specpath::testing::random_map(1 + static_cast<int>(seed % 9), 1 + static_cast<int>(seed % 7), 40, seed);
    const auto back = parse_map(to_movingai(m));
    REQUIRE(back.width() == m.width());
    REQUIRE(back.height() == m.height());
    for (std::size_t i = 0; i < m.cell_count(); ++i) CHECK(back.blocked(back.cell_at(i)) == m.blocked(m.cell_at(i)));
  }
}

TEST_CASE("neighbors8 canonical order") {
  const auto map = parse_map("type octile\nheight 3\nwidth 3\nmap\n...\n...\n...\n");
  const auto center = neighbors8(map, {1, 1});
  REQUIRE(center.size() == 8);
  CHECK(center == std::vector<Cell>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
  CHECK(neighbors8(map, {0, 0}) == std::vector<Cell>{{0, 1}, {1, 0}, {1, 1}});

  const auto single = parse_map("type octile\nheight 1\nwidth 1\nmap\n.\n");
  CHECK(neighbors8(single, {0, 0}).empty());
}

TEST_CASE("neighbors8 property: 3..8 distinct adjacent cells") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 2 + static_cast<int>(rng() % 12);
    const int h = 2 + static_cast<int>(rng() % 12);
    const auto map = specpath::testing::random_map(w, h, 0, rng());
    const Cell c{static_cast<int>(rng() % static_cast<unsigned>(w)), static_cast<int>(rng() % static_cast<unsigned>(h))};
    const auto ns = neighbors8(map, c);
    CHECK(ns.size() >= 3);
    CHECK(ns.size() <= 8);
    CHECK(std::set<Cell>(ns.begin(), ns.end()).size() == ns.size());
    for (Cell n : ns) {
      CHECK(map.in_bounds(n));
      CHECK(adjacent8(c, n));
    }
  }
}

TEST_CASE("move_cost") {
  CHECK(move_cost({2, 2}, {3, 2}) == 1.0);
  CHECK(move_cost({2, 2}, {3, 3}) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(move_cost({2, 2}, {2, 1}) == 1.0);
  CHECK_THROWS_AS(move_cost({2, 2}, {4, 2}), ContractViolation);
  CHECK_THROWS_AS(move_cost({2, 2}, {2, 2}), ContractViolation);
}

TEST_CASE("euclidean_h") {
  CHECK(euclidean_h({0, 0}, {3, 4}) == 5.0);
  CHECK(euclidean_h({2, 2}, {2, 2}) == 0.0);
  CHECK(euclidean_h({0, 0}, {1, 1}) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
}

TEST_CASE("heuristic admissibility against all-pairs shortest paths") {
  auto check_map = [](const GridMap& map) {
    const auto d = specpath::testing::floyd_warshall(map);
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < map.cell_count(); ++i)
      for (std::size_t j = 0; j < map.cell_count(); ++j) {
        if (d[i][j] == specpath::testing::kInf) continue;
        ++pairs;
        CHECK(euclidean_h(map.cell_at(i), map.cell_at(j)) <= d[i][j] + 1e-12);
      }
    CHECK(pairs > 0);
  };
  check_map(load_map(data_path("maps/sample_movingai.map")));
  for (std::uint32_t seed = 100; seed < 104; ++seed) check_map(specpath::testing::random_map(16, 16, 30, seed));
}

TEST_CASE("heuristic admissibility on the larger bundled maps (sampled sources)") {
  for (const char* name : {"open_field", "corridor", "spiral", "random30"}) {
    const auto map = load_map(data_path(std::string("maps/") + name + ".map"));
    std::mt19937 rng(11);
    for (int s = 0; s < 6; ++s) {
      const Cell src = specpath::testing::random_free_cell(map, rng);
      const auto d = specpath::testing::bellman_ford(map, src);
      for (std::size_t j = 0; j < map.cell_count(); ++j)
        if (d[j] != specpath::testing::kInf) CHECK(euclidean_h(src, map.cell_at(j)) <= d[j] + 1e-12);
    }
  }
}

TEST_CASE("GridMap rejects inconsistent dimensions") {
  CHECK_THROWS_AS(GridMap(0, 1, {}), ContractViolation);
  CHECK_THROWS_AS(GridMap(2, 2, std::vector<std::uint8_t>(3)), ContractViolation);
}
