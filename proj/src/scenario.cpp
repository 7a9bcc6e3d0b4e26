#include "specpath/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "specpath/errors.hpp"

namespace specpath {

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::vector<ScenarioEntry> parse_scen(std::istream& in) {
  std::vector<ScenarioEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (lineno == 1 && line.rfind("version", 0) == 0) continue;

    std::istringstream ss(line);
    std::vector<std::string> f;
    for (std::string tok; ss >> tok;) f.push_back(tok);
    if (f.size() != 9) throw ParseError(lineno, "expected 9 scenario fields, got " + std::to_string(f.size()));

    ScenarioEntry e;
    e.map = f[1];
    if (!parse_number(f[0], e.bucket) || !parse_number(f[2], e.width) || !parse_number(f[3], e.height) ||
        !parse_number(f[4], e.start.x) || !parse_number(f[5], e.start.y) || !parse_number(f[6], e.goal.x) ||
        !parse_number(f[7], e.goal.y) || !parse_number(f[8], e.optimal_length))
      throw ParseError(lineno, "malformed scenario line '" + line + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ScenarioEntry> load_scen(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open scenario file '" + path.string() + "'");
  return parse_scen(in);
}

std::string scenario_label(Cell start, Cell goal) {
  return std::to_string(start.x) + ":" + std::to_string(start.y) + "-" + std::to_string(goal.x) + ":" +
         std::to_string(goal.y);
}

std::string ScenarioSpec::label() const { return scenario_label(start, goal); }

Cell parse_cell(std::string_view text) {
  const auto comma = text.find(',');
  Cell c;
  if (comma == std::string_view::npos || !parse_number(text.substr(0, comma), c.x) ||
      !parse_number(text.substr(comma + 1), c.y))
    throw ContractViolation("expected X,Y coordinates, got '" + std::string(text) + "'");
  return c;
}

}  // namespace specpath
