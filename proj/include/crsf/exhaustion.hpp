#pragma once
#include <stdexcept>
#include <vector>

#include "crsf/lattice.hpp"
#include "crsf/multigraph.hpp"

namespace crsf {

// Ball family B_n^x = { y : d_inf(x,y) <= step*n } on the square lattice.
// The default step 3 keeps the open annulus between consecutive balls wide
// enough to contain whole plaquettes next to every boundary vertex.
struct LatticeExhaustion {
  Coord center{0, 0};
  int step = 3;

  int radius(int n) const { return step * n; }
  bool in_ball(Coord c, int n) const { return linf_norm(c, center) <= radius(n); }
  bool on_boundary(Coord c, int n) const { return linf_norm(c, center) == radius(n); }
  bool in_open_annulus(Coord c, int n) const {
    int d = linf_norm(c, center);
    return d > radius(n) && d < radius(n + 1);
  }

  std::vector<Vertex> ball(int n) const {
    if (n < 0) throw std::invalid_argument("ball index must be >= 0");
    int r = radius(n);
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(2 * r + 1) * (2 * r + 1));
    for (int y = center.y - r; y <= center.y + r; ++y)
      for (int x = center.x - r; x <= center.x + r; ++x) out.push_back(pack_xy(x, y));
    return out;
  }

  std::vector<Vertex> boundary(int n) const {
    int r = radius(n);
    if (r == 0) return {pack_xy(center.x, center.y)};
    std::vector<Vertex> out;
    out.reserve(8 * static_cast<std::size_t>(r));
    for (int x = center.x - r; x <= center.x + r; ++x) {
      out.push_back(pack_xy(x, center.y - r));
      out.push_back(pack_xy(x, center.y + r));
    }
    for (int y = center.y - r + 1; y <= center.y + r - 1; ++y) {
      out.push_back(pack_xy(center.x - r, y));
      out.push_back(pack_xy(center.x + r, y));
    }
    return out;
  }
};

// Explicit increasing vertex-set sequence on a finite graph.
struct ExplicitExhaustion {
  std::vector<std::vector<Vertex>> sets;

  int depth() const { return static_cast<int>(sets.size()); }

  std::vector<Vertex> ball(int n) const {
    if (n < 0 || n >= depth()) throw std::out_of_range("exhaustion index");
    return sets[n];
  }

  // Members of B_n adjacent to the complement.
  std::vector<Vertex> boundary(const Multigraph& g, int n) const {
    std::vector<char> in(g.vertex_count(), 0);
    for (Vertex v : sets[n]) in[v] = 1;
    std::vector<Vertex> out;
    for (Vertex v : sets[n]) {
      for (const auto& he : g.incident(v))
        if (!in[he.to]) {
          out.push_back(v);
          break;
        }
    }
    return out;
  }

  void validate() const {
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
      std::vector<char> next_has;
      Vertex maxv = 0;
      for (Vertex v : sets[i + 1]) maxv = v > maxv ? v : maxv;
      for (Vertex v : sets[i]) maxv = v > maxv ? v : maxv;
      next_has.assign(static_cast<std::size_t>(maxv) + 1, 0);
      for (Vertex v : sets[i + 1]) next_has[v] = 1;
      for (Vertex v : sets[i])
        if (!next_has[v]) throw std::invalid_argument("exhaustion sets must be increasing");
    }
  }
};

}  // namespace crsf
