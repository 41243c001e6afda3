#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lqw {

/// Lattice family of a periodic 2D grid.
enum class Topology { rectangular, triangular, honeycomb };

/// Number of edges per vertex: 4 rectangular, 6 triangular, 3 honeycomb.
constexpr int degree(Topology topology) noexcept {
  switch (topology) {
    case Topology::rectangular: return 4;
    case Topology::triangular: return 6;
    case Topology::honeycomb: return 3;
  }
  return 0;
}

/// Lowercase name used in CLI flags and output files.
std::string_view to_string(Topology topology) noexcept;

/// Inverse of to_string. Throws GridError on unknown names.
Topology parse_topology(std::string_view name);

/// Raised for invalid grid geometry and out-of-range coin slots.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct VertexCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const VertexCoord&, const VertexCoord&) = default;
  friend auto operator<=>(const VertexCoord&, const VertexCoord&) = default;
};

/// Coin register index. Slots 0..d-1 are edge directions, slot d is the self-loop.
///
/// Fixed orderings (stable across file formats):
///   rectangular: 0 up, 1 down, 2 left, 3 right
///   triangular:  0 north-west, 1 north-east, 2 west, 3 east, 4 south-west, 5 south-east
///   honeycomb:   0 horizontal, 1 NE-SW diagonal, 2 NW-SE diagonal
///
/// Honeycomb labels are abstract: the concrete direction depends on the vertex
/// type (type A owns east/north-west/south-west, type B owns west/south-east/north-east).
struct CoinSlot {
  int index = 0;

  friend bool operator==(const CoinSlot&, const CoinSlot&) = default;
  friend auto operator<=>(const CoinSlot&, const CoinSlot&) = default;
};

namespace slot {
namespace rect {
inline constexpr CoinSlot up{0}, down{1}, left{2}, right{3};
}
namespace tri {
inline constexpr CoinSlot north_west{0}, north_east{1}, west{2}, east{3}, south_west{4},
    south_east{5};
}
namespace hex {
inline constexpr CoinSlot horizontal{0}, ne_sw{1}, nw_se{2};
}
}  // namespace slot

enum class VertexType { A, B };

/// Periodic grid of width x height vertices. Vertex index is y * width + x.
struct GridSpec {
  Topology topology = Topology::triangular;
  int width = 0;
  int height = 0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

  [[nodiscard]] int degree() const noexcept { return lqw::degree(topology); }
  /// Coin slots per vertex, including the self-loop.
  [[nodiscard]] int slots() const noexcept { return degree() + 1; }
  [[nodiscard]] CoinSlot loop_slot() const noexcept { return CoinSlot{degree()}; }
  [[nodiscard]] std::size_t vertex_count() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  /// Length of a state vector over this grid.
  [[nodiscard]] std::size_t dimension() const noexcept {
    return vertex_count() * static_cast<std::size_t>(slots());
  }

  [[nodiscard]] VertexCoord wrap(int x, int y) const noexcept;
  [[nodiscard]] bool contains(VertexCoord v) const noexcept {
    return v.x >= 0 && v.x < width && v.y >= 0 && v.y < height;
  }
  [[nodiscard]] std::size_t vertex_index(VertexCoord v) const noexcept {
    return static_cast<std::size_t>(v.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(v.x);
  }
  [[nodiscard]] VertexCoord vertex_at(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width)),
            static_cast<int>(index / static_cast<std::size_t>(width))};
  }
  /// Flat amplitude index of (v, s) in the vertex-major state layout.
  [[nodiscard]] std::size_t amplitude_index(VertexCoord v, CoinSlot s) const noexcept {
    return vertex_index(v) * static_cast<std::size_t>(slots()) + static_cast<std::size_t>(s.index);
  }
};

/// Throws GridError naming the violated rule: both sides >= 2, and even sides
/// for honeycomb (odd wraparound breaks the bipartite vertex typing).
void validate(const GridSpec& grid);

/// Honeycomb vertices alternate by (x + y) parity, even = A. Other lattices are single-type.
VertexType vertex_type(const GridSpec& grid, VertexCoord v) noexcept;

struct ShiftTarget {
  VertexCoord vertex;
  CoinSlot slot;

  friend bool operator==(const ShiftTarget&, const ShiftTarget&) = default;
};

/// Flip-flop shift of one basis state. The loop slot is a fixed point.
/// Throws GridError if the slot index is outside [0, degree].
ShiftTarget resolve_shift(const GridSpec& grid, VertexCoord v, CoinSlot s);

std::string describe(const GridSpec& grid);

}  // namespace lqw
