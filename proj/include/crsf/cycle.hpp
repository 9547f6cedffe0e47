#pragma once
#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "crsf/multigraph.hpp"

namespace crsf {

// A closed walk as seen by the weight model: vertices in walked order
// (v_0..v_{k-1}, the closing edge returns to v_0), the traversed edge ids
// when the host graph tracks them, and coordinates when it is geometric.
struct LoopView {
  std::span<const Vertex> verts;
  std::span<const EdgeRef> edges;  // same length as verts, or empty
  std::span<const Coord> coords;   // same length as verts, or empty

  std::size_t length() const { return verts.size(); }
};

// A walked loop is a simple cycle iff its vertices are distinct and, for
// length 2, the two traversals use distinct parallel edges. Length-2 loops
// on graphs that do not track edge ids (no parallel edges) are backtracks.
inline bool is_simple_loop(const LoopView& lv) {
  std::size_t k = lv.verts.size();
  if (k == 0) return false;
  if (k == 1) return true;
  if (k == 2) {
    if (lv.verts[0] == lv.verts[1]) return false;
    if (lv.edges.size() != 2) return false;
    return lv.edges[0] != lv.edges[1];
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (lv.verts[i] == lv.verts[j]) return false;
  return true;
}

// An oriented simple cycle in canonical form: rotated so the minimal vertex
// comes first (vertices are distinct, so the rotation is unique). edges[i]
// joins verts[i] to verts[(i+1) % k]; edges may be empty on edge-untracked
// graphs.
struct OrientedCycle {
  std::vector<Vertex> verts;
  std::vector<EdgeRef> edges;

  std::size_t length() const { return verts.size(); }
  bool is_self_loop() const { return verts.size() == 1; }

  friend bool operator==(const OrientedCycle&, const OrientedCycle&) = default;
  friend auto operator<=>(const OrientedCycle&, const OrientedCycle&) = default;
};

inline OrientedCycle canonical_cycle(std::span<const Vertex> verts,
                                     std::span<const EdgeRef> edges) {
  std::size_t k = verts.size();
  if (k == 0) throw std::invalid_argument("empty cycle");
  if (!edges.empty() && edges.size() != k) throw std::invalid_argument("edge count mismatch");
  std::size_t shift = static_cast<std::size_t>(
      std::min_element(verts.begin(), verts.end()) - verts.begin());
  OrientedCycle c;
  c.verts.resize(k);
  for (std::size_t i = 0; i < k; ++i) c.verts[i] = verts[(shift + i) % k];
  if (!edges.empty()) {
    c.edges.resize(k);
    for (std::size_t i = 0; i < k; ++i) c.edges[i] = edges[(shift + i) % k];
  }
  return c;
}

inline OrientedCycle canonical_cycle(const LoopView& lv) {
  return canonical_cycle(lv.verts, lv.edges);
}

// gamma^{-1}: same vertex set walked the other way, re-canonicalized.
// A self-loop is its own reverse.
inline OrientedCycle reverse_cycle(const OrientedCycle& c) {
  std::size_t k = c.verts.size();
  OrientedCycle r;
  r.verts.resize(k);
  r.verts[0] = c.verts[0];
  for (std::size_t i = 1; i < k; ++i) r.verts[i] = c.verts[k - i];
  if (!c.edges.empty()) {
    r.edges.resize(k);
    for (std::size_t i = 0; i < k; ++i) r.edges[i] = c.edges[k - 1 - i];
  }
  return r;
}

// The unordered pair {gamma, gamma^{-1}}, represented by the smaller of the
// two canonical orientations.
struct CycleClass {
  OrientedCycle rep;

  std::size_t length() const { return rep.length(); }
  bool is_self_loop() const { return rep.is_self_loop(); }

  friend bool operator==(const CycleClass&, const CycleClass&) = default;
  friend auto operator<=>(const CycleClass&, const CycleClass&) = default;
};

inline CycleClass make_class(const OrientedCycle& c) {
  OrientedCycle r = reverse_cycle(c);
  return {c <= r ? c : r};
}

inline CycleClass make_class(const LoopView& lv) { return make_class(canonical_cycle(lv)); }

}  // namespace crsf
