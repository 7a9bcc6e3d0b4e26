#include "specpath/grid_world.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "specpath/errors.hpp"

namespace specpath {

std::ostream& operator<<(std::ostream& os, const Cell& c) { return os << '(' << c.x << ',' << c.y << ')'; }

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked)) {
  if (width < 1 || height < 1) throw ContractViolation("map dimensions must be at least 1x1");
  if (blocked_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw ContractViolation("occupancy size does not match width*height");
}

std::size_t GridMap::blocked_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(blocked_.begin(), blocked_.end(), [](auto b) { return b != 0; }));
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

int parse_dimension(const std::string& line, std::string_view key, std::size_t lineno) {
  std::istringstream ss(line);
  std::string word, value, extra;
  ss >> word >> value;
  if (word != key || value.empty() || (ss >> extra))
    throw ParseError(lineno, "expected '" + std::string(key) + " <n>', got '" + line + "'");
  int n = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc{} || ptr != value.data() + value.size() || n < 1)
    throw ParseError(lineno, "invalid " + std::string(key) + " '" + value + "'");
  return n;
}

bool blocked_char(char ch, std::size_t lineno, std::size_t column) {
  switch (ch) {
    case '.':
    case 'G':
      return false;
    case '@':
    case 'O':
    case 'T':
      return true;
    default:
      throw ParseError(lineno, "unknown map character '" + std::string(1, ch) + "' at column " +
                                   std::to_string(column + 1));
  }
}

}  // namespace

GridMap parse_map(std::istream& in) {
  LineReader reader(in);
  std::string line;
  auto require = [&](const char* what) {
    if (!reader.next(line))
      throw ParseError(reader.number(), std::string("unexpected end of input, expected ") + what);
  };

  require("'type octile'");
  {
    std::istringstream ss(line);
    std::string word, type;
    ss >> word >> type;
    if (word != "type" || type.empty()) throw ParseError(reader.number(), "expected 'type <name>', got '" + line + "'");
  }

  int height = 0;
  int width = 0;
  for (int i = 0; i < 2; ++i) {
    require("'height' or 'width'");
    if (line.rfind("height", 0) == 0 && height == 0)
      height = parse_dimension(line, "height", reader.number());
    else if (line.rfind("width", 0) == 0 && width == 0)
      width = parse_dimension(line, "width", reader.number());
    else
      throw ParseError(reader.number(), "expected 'height <n>' or 'width <n>', got '" + line + "'");
  }

  require("'map'");
  if (line != "map") throw ParseError(reader.number(), "expected 'map', got '" + line + "'");

  std::vector<std::uint8_t> blocked;
  blocked.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    if (!reader.next(line))
      throw ParseError(reader.number(), "expected " + std::to_string(height) + " map rows, found " +
                                            std::to_string(y));
    if (line.size() != static_cast<std::size_t>(width))
      throw ParseError(reader.number(), "row length " + std::to_string(line.size()) + " does not match width " +
                                            std::to_string(width));
    for (std::size_t x = 0; x < line.size(); ++x) blocked.push_back(blocked_char(line[x], reader.number(), x) ? 1 : 0);
  }
  while (reader.next(line)) {
    if (!line.empty())
      throw ParseError(reader.number(), "more map rows than height " + std::to_string(height));
  }
  return GridMap(width, height, std::move(blocked));
}

GridMap parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_map(in);
}

GridMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open map file '" + path.string() + "'");
  return parse_map(in);
}

std::string to_movingai(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " + std::to_string(map.width()) +
                    "\nmap\n";
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) out.push_back(map.blocked({x, y}) ? '@' : '.');
    out.push_back('\n');
  }
  return out;
}

std::vector<Cell> neighbors8(const GridMap& map, Cell c) {
  std::vector<Cell> out;
  out.reserve(kMotions.size());
  for (const auto& m : kMotions) {
    Cell n{c.x + m.dx, c.y + m.dy};
    if (map.in_bounds(n)) out.push_back(n);
  }
  return out;
}

bool adjacent8(Cell a, Cell b) noexcept {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return dx <= 1 && dy <= 1 && (dx | dy) != 0;
}

double move_cost(Cell a, Cell b) {
  if (!adjacent8(a, b)) {
    std::ostringstream msg;
    msg << "move_cost: " << a << " and " << b << " are not 8-adjacent";
    throw ContractViolation(msg.str());
  }
  return (a.x != b.x && a.y != b.y) ? kSqrt2 : 1.0;
}

double euclidean_h(Cell c, Cell goal) noexcept {
  const double dx = c.x - goal.x;
  const double dy = c.y - goal.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace specpath
