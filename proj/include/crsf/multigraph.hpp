#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace crsf {

using Vertex = std::int64_t;   // dense index on finite graphs, packed coordinate on lattices
using EdgeRef = std::int32_t;  // finite edge id; -1 = none
constexpr EdgeRef kNoEdge = -1;

struct Coord {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

// Finite connected multigraph. Self-loops and parallel edges are allowed;
// a self-loop contributes two half-edges to its vertex. Vertices are dense
// indices 0..n-1; external (file) ids are kept in external_id.
class Multigraph {
 public:
  struct HalfEdge {
    Vertex to;
    EdgeRef edge;
  };
  struct Edge {
    Vertex u, v;
  };

  Multigraph(std::vector<std::int64_t> external_ids,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& edge_list)
      : external_id_(std::move(external_ids)) {
    std::unordered_map<std::int64_t, Vertex> index;
    for (std::size_t i = 0; i < external_id_.size(); ++i) {
      if (!index.emplace(external_id_[i], static_cast<Vertex>(i)).second)
        throw std::invalid_argument("duplicate vertex id " + std::to_string(external_id_[i]));
    }
    adjacency_.resize(external_id_.size());
    edges_.reserve(edge_list.size());
    for (const auto& [a, b] : edge_list) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        throw std::invalid_argument("edge references unknown vertex");
      add_edge_internal(ia->second, ib->second);
    }
    if (!connected()) throw std::invalid_argument("graph is not connected");
  }

  // Convenience: n vertices with ids 0..n-1.
  Multigraph(int n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edge_list)
      : Multigraph(iota_ids(n), edge_list) {}

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  HalfEdge halfedge(Vertex v, int k) const { return adjacency_[v][k]; }
  const std::vector<HalfEdge>& incident(Vertex v) const { return adjacency_[v]; }
  Edge edge(EdgeRef e) const { return edges_[e]; }
  bool is_self_loop(EdgeRef e) const { return edges_[e].u == edges_[e].v; }
  std::int64_t external_id(Vertex v) const { return external_id_[v]; }

  // Optional planar embedding; enables geometric weight families (plaquette).
  void set_coords(std::vector<Coord> coords) {
    if (coords.size() != adjacency_.size())
      throw std::invalid_argument("coords size mismatch");
    coords_ = std::move(coords);
  }
  bool geometric() const { return !coords_.empty(); }
  Coord coord(Vertex v) const { return coords_[v]; }

  static constexpr bool tracks_edges = true;

 private:
  static std::vector<std::int64_t> iota_ids(int n) {
    std::vector<std::int64_t> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    return ids;
  }

  void add_edge_internal(Vertex u, Vertex v) {
    EdgeRef id = static_cast<EdgeRef>(edges_.size());
    edges_.push_back({u, v});
    adjacency_[u].push_back({v, id});
    adjacency_[v].push_back({u, id});  // self-loop: two half-edges at u==v
  }

  bool connected() const {
    if (adjacency_.empty()) return false;
    std::vector<char> seen(adjacency_.size(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t found = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& he : adjacency_[v])
        if (!seen[he.to]) {
          seen[he.to] = 1;
          ++found;
          stack.push_back(he.to);
        }
    }
    return found == adjacency_.size();
  }

  std::vector<std::int64_t> external_id_;
  std::vector<std::vector<HalfEdge>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<Coord> coords_;
};

// Small builders used across tests and the CLI.

inline Multigraph make_path(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Multigraph(n, e);
}

inline Multigraph make_cycle(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Multigraph(n, e);
}

inline Multigraph make_complete(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Multigraph(n, e);
}

// Two vertices joined by `strands` parallel edges (strands=3 gives the theta graph).
inline Multigraph make_theta(int strands = 3) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < strands; ++i) e.push_back({0, 1});
  return Multigraph(2, e);
}

// rows x cols grid with unit coordinates; vertex (r,c) -> index r*cols+c.
inline Multigraph make_grid(int rows, int cols) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  auto id = [cols](int r, int c) { return static_cast<std::int64_t>(r) * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  Multigraph g(rows * cols, e);
  std::vector<Coord> coords(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) coords[id(r, c)] = {c, r};
  g.set_coords(coords);
  return g;
}

}  // namespace crsf
