#pragma once
#include <cstdint>

#include "crsf/multigraph.hpp"

namespace crsf {

// Packed coordinates for lattice vertices: x in the high 32 bits, y low.
inline Vertex pack_xy(std::int32_t x, std::int32_t y) {
  return (static_cast<std::int64_t>(x) << 32) |
         (static_cast<std::int64_t>(static_cast<std::uint32_t>(y)));
}
inline Coord unpack_xy(Vertex v) {
  return {static_cast<std::int32_t>(v >> 32),
          static_cast<std::int32_t>(static_cast<std::uint32_t>(v & 0xffffffffULL))};
}

// The square lattice Z^2, optionally with a self-loop at every vertex
// (degree 4, or 6 counting the two self-loop half-edges). Neighbor
// enumeration is fixed (+x, -x, +y, -y, then the self-loop halves) and
// translation invariant.
class SquareLattice {
 public:
  explicit SquareLattice(bool self_loops = false) : self_loops_(self_loops) {}

  struct HalfEdge {
    Vertex to;
    EdgeRef edge;  // kNoEdge: lattice edges carry no ids (no parallel edges)
  };

  bool has_self_loops() const { return self_loops_; }
  int degree(Vertex) const { return self_loops_ ? 6 : 4; }

  HalfEdge halfedge(Vertex v, int k) const {
    Coord c = unpack_xy(v);
    switch (k) {
      case 0: return {pack_xy(c.x + 1, c.y), kNoEdge};
      case 1: return {pack_xy(c.x - 1, c.y), kNoEdge};
      case 2: return {pack_xy(c.x, c.y + 1), kNoEdge};
      case 3: return {pack_xy(c.x, c.y - 1), kNoEdge};
      default: return {v, kNoEdge};  // self-loop half-edges
    }
  }

  static constexpr bool tracks_edges = false;
  bool geometric() const { return true; }
  Coord coord(Vertex v) const { return unpack_xy(v); }

 private:
  bool self_loops_;
};

inline std::int32_t linf_norm(Coord a, Coord b) {
  std::int32_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  std::int32_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

// Induced subgraph of the lattice on the box |x-cx|,|y-cy| <= radius,
// as a finite Multigraph with coordinates (so geometric weight families
// evaluate identically). Returns the graph, the packed->dense map, and the
// box boundary (vertices adjacent to the complement in Z^2).
struct LatticePatch {
  Multigraph graph;
  std::unordered_map<Vertex, Vertex> dense;  // packed coordinate -> dense index
  std::vector<Vertex> boundary;              // dense indices
};

inline LatticePatch make_lattice_patch(const SquareLattice& lat, Coord center, int radius) {
  int side = 2 * radius + 1;
  auto inside = [&](int x, int y) {
    return x >= center.x - radius && x <= center.x + radius && y >= center.y - radius &&
           y <= center.y + radius;
  };
  auto dense_of = [&](int x, int y) {
    return static_cast<Vertex>((y - (center.y - radius)) * side + (x - (center.x - radius)));
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::vector<Coord> coords(static_cast<std::size_t>(side) * side);
  for (int y = center.y - radius; y <= center.y + radius; ++y)
    for (int x = center.x - radius; x <= center.x + radius; ++x) {
      Vertex d = dense_of(x, y);
      coords[d] = {x, y};
      if (inside(x + 1, y)) edges.push_back({d, dense_of(x + 1, y)});
      if (inside(x, y + 1)) edges.push_back({d, dense_of(x, y + 1)});
      if (lat.has_self_loops()) edges.push_back({d, d});
    }
  Multigraph g(side * side, edges);
  g.set_coords(coords);

  LatticePatch patch{std::move(g), {}, {}};
  for (int y = center.y - radius; y <= center.y + radius; ++y)
    for (int x = center.x - radius; x <= center.x + radius; ++x) {
      Vertex d = dense_of(x, y);
      patch.dense.emplace(pack_xy(x, y), d);
      if (x == center.x - radius || x == center.x + radius || y == center.y - radius ||
          y == center.y + radius)
        patch.boundary.push_back(d);
    }
  return patch;
}

}  // namespace crsf
