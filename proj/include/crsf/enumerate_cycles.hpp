#pragma once
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsf/cycle.hpp"
#include "crsf/multigraph.hpp"

namespace crsf {

struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every simple cycle class of length <= max_len, in canonical form, each
// exactly once. Parallel edges yield distinct classes (theta graph: one per
// unordered pair of strands); self-loops are length-1 classes.
inline std::vector<CycleClass> enumerate_cycle_classes(const Multigraph& g, int max_len,
                                                       std::size_t cap = 200000) {
  std::set<CycleClass> classes;
  auto emit = [&](const OrientedCycle& c) {
    classes.insert(make_class(c));
    if (classes.size() > cap)
      throw EnumerationCapExceeded("cycle enumeration exceeded cap of " + std::to_string(cap));
  };

  if (max_len >= 1)
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      if (g.is_self_loop(e)) emit(OrientedCycle{{g.edge(e).u}, {e}});

  if (max_len >= 2)
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      for (EdgeRef f = e + 1; f < g.edge_count(); ++f) {
        if (g.is_self_loop(e) || g.is_self_loop(f)) continue;
        auto a = g.edge(e), b = g.edge(f);
        bool same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
        if (!same) continue;
        Vertex lo = a.u < a.v ? a.u : a.v, hi = a.u < a.v ? a.v : a.u;
        emit(OrientedCycle{{lo, hi}, {e, f}});
      }

  if (max_len >= 3) {
    std::vector<Vertex> pv;
    std::vector<EdgeRef> pe;
    std::vector<char> on_path(g.vertex_count(), 0);
    // Rooted DFS: cycles are rooted at their minimal vertex; the direction
    // constraint verts[1] < verts.back() picks one orientation of each.
    auto dfs = [&](auto&& self, Vertex root, Vertex v) -> void {
      for (const auto& he : g.incident(v)) {
        if (he.to == root && pv.size() >= 3) {
          if (pv[1] < pv.back()) {
            pe.push_back(he.edge);
            emit(OrientedCycle{pv, pe});
            pe.pop_back();
          }
          continue;
        }
        if (he.to <= root || on_path[he.to]) continue;
        if (static_cast<int>(pv.size()) >= max_len) continue;
        pv.push_back(he.to);
        pe.push_back(he.edge);
        on_path[he.to] = 1;
        self(self, root, he.to);
        on_path[he.to] = 0;
        pe.pop_back();
        pv.pop_back();
      }
    };
    for (Vertex r = 0; r < g.vertex_count(); ++r) {
      pv.assign(1, r);
      pe.clear();
      on_path[r] = 1;
      dfs(dfs, r, r);
      on_path[r] = 0;
    }
  }

  return {classes.begin(), classes.end()};
}

}  // namespace crsf
