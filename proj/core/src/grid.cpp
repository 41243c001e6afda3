#include "lqw/grid.hpp"

#include <array>

#include <fmt/format.h>

namespace lqw {

namespace {

struct Move {
  int dx;
  int dy;
  int arrival;
};

// Indexed by departing slot; arrival slot carries the reversed direction.
constexpr std::array<Move, 4> kRectangularMoves{{
    {0, 1, 1},   // up    -> arrives moving down
    {0, -1, 0},  // down  -> up
    {-1, 0, 3},  // left  -> right
    {1, 0, 2},   // right -> left
}};

constexpr std::array<Move, 6> kTriangularMoves{{
    {-1, 1, 5},  // north-west -> south-east
    {0, 1, 4},   // north-east -> south-west
    {-1, 0, 3},  // west       -> east
    {1, 0, 2},   // east       -> west
    {0, -1, 1},  // south-west -> north-east
    {1, -1, 0},  // south-east -> north-west
}};

// Honeycomb labels survive the shift; type B mirrors the displacement of type A.
constexpr std::array<Move, 3> kHoneycombMovesA{{
    {1, 0, 0},   // horizontal: east
    {0, -1, 1},  // NE-SW: south-west
    {0, 1, 2},   // NW-SE: north-west
}};

}  // namespace

std::string_view to_string(Topology topology) noexcept {
  switch (topology) {
    case Topology::rectangular: return "rectangular";
    case Topology::triangular: return "triangular";
    case Topology::honeycomb: return "honeycomb";
  }
  return "unknown";
}

Topology parse_topology(std::string_view name) {
  for (auto t : {Topology::rectangular, Topology::triangular, Topology::honeycomb}) {
    if (name == to_string(t)) return t;
  }
  throw GridError(fmt::format(
      "unknown topology '{}' (expected rectangular, triangular or honeycomb)", name));
}

VertexCoord GridSpec::wrap(int x, int y) const noexcept {
  x %= width;
  y %= height;
  if (x < 0) x += width;
  if (y < 0) y += height;
  return {x, y};
}

void validate(const GridSpec& grid) {
  if (grid.width < 2 || grid.height < 2) {
    throw GridError(fmt::format("grid dimensions must be at least 2x2, got {}x{}", grid.width,
                                grid.height));
  }
  if (grid.topology == Topology::honeycomb && (grid.width % 2 != 0 || grid.height % 2 != 0)) {
    throw GridError(fmt::format("honeycomb requires even dimensions, got {}x{}", grid.width,
                                grid.height));
  }
}

VertexType vertex_type(const GridSpec& grid, VertexCoord v) noexcept {
  if (grid.topology != Topology::honeycomb) return VertexType::A;
  return ((v.x + v.y) % 2 == 0) ? VertexType::A : VertexType::B;
}

ShiftTarget resolve_shift(const GridSpec& grid, VertexCoord v, CoinSlot s) {
  const int d = grid.degree();
  if (s.index < 0 || s.index > d) {
    throw GridError(fmt::format("coin slot {} out of range [0, {}] for {} grid", s.index, d,
                                to_string(grid.topology)));
  }
  if (s.index == d) return {v, s};

  Move m{};
  switch (grid.topology) {
    case Topology::rectangular: m = kRectangularMoves[s.index]; break;
    case Topology::triangular: m = kTriangularMoves[s.index]; break;
    case Topology::honeycomb:
      m = kHoneycombMovesA[s.index];
      if (vertex_type(grid, v) == VertexType::B) {
        m.dx = -m.dx;
        m.dy = -m.dy;
      }
      break;
  }
  return {grid.wrap(v.x + m.dx, v.y + m.dy), CoinSlot{m.arrival}};
}

std::string describe(const GridSpec& grid) {
  return fmt::format("{} {}x{}", to_string(grid.topology), grid.width, grid.height);
}

}  // namespace lqw
