#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace specpath {

// x is the column, y the row; (0,0) is the first character of the first map row.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::ostream& operator<<(std::ostream& os, const Cell& c);

struct Motion {
  int dx;
  int dy;
  double cost;
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

// Canonical order: dx outer, dy inner, both over {-1,0,1}, skipping (0,0).
inline constexpr std::array<Motion, 8> kMotions{{
    {-1, -1, kSqrt2},
    {-1, 0, 1.0},
    {-1, 1, kSqrt2},
    {0, -1, 1.0},
    {0, 1, 1.0},
    {1, -1, kSqrt2},
    {1, 0, 1.0},
    {1, 1, kSqrt2},
}};

// Immutable occupancy ground truth.
class GridMap {
 public:
  GridMap(int width, int height, std::vector<std::uint8_t> blocked);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t cell_count() const noexcept { return blocked_.size(); }

  bool in_bounds(Cell c) const noexcept { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  // Precondition: in_bounds(c).
  bool blocked(Cell c) const noexcept { return blocked_[index(c)] != 0; }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }
  Cell cell_at(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }
  std::size_t blocked_count() const noexcept;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
};

// movingai .map text. `.` and `G` are passable, `@`, `O` and `T` are blocked.
GridMap parse_map(std::istream& in);
GridMap parse_map(std::string_view text);
GridMap load_map(const std::filesystem::path& path);

// Normalized movingai text: passable as `.`, blocked as `@`.
std::string to_movingai(const GridMap& map);

// In-bounds neighbors in canonical order.
std::vector<Cell> neighbors8(const GridMap& map, Cell c);

bool adjacent8(Cell a, Cell b) noexcept;

// 1 for a cardinal step, sqrt(2) for a diagonal one. Throws ContractViolation when a and b are
// not 8-adjacent.
double move_cost(Cell a, Cell b);

double euclidean_h(Cell c, Cell goal) noexcept;

}  // namespace specpath
