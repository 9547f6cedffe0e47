#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "crsf/cycle.hpp"
#include "crsf/multigraph.hpp"
#include "crsf/rng.hpp"
#include "crsf/weight_model.hpp"

namespace crsf {

struct StepCapExceeded : std::runtime_error {
  explicit StepCapExceeded(std::uint64_t cap)
      : std::runtime_error("run exceeded the step cap of " + std::to_string(cap) +
                           " total walk steps; either the run is a.s. finite but slow "
                           "or the model cannot root (check weights and boundary)"),
        cap(cap) {}
  std::uint64_t cap;
};

// Rooting/hitting bookkeeping of one walk: T_r is the first time a closed
// loop is kept, T_W the hitting time of the boundary set, and the ending
// time T_f = min(T_r, T_W).
struct RootingRecord {
  std::optional<std::uint64_t> t_root;      // T_r when a loop was kept
  std::optional<std::uint64_t> t_boundary;  // T_W when the boundary was hit first
  std::uint64_t t_end = 0;                  // T_f

  bool rooted() const { return t_root.has_value(); }
};

// Recorded randomness of one walk, enough to replay the loop-erasure through
// an independent implementation: every step (vertex and edge), plus the
// acceptance draw consumed at each loop-closing time.
struct WalkTrace {
  Vertex start = 0;
  std::vector<Vertex> verts;                       // X_1..X_T
  std::vector<EdgeRef> edges;                      // edge used at each step
  std::unordered_map<std::uint64_t, double> y_at;  // Y_{n_k} at closing times
  std::vector<std::uint64_t> closures;             // the times n_k
};

// One node of the loop-erased path: the vertex and the edge that leads to it
// from its predecessor (kNoEdge for the start).
struct PathStep {
  Vertex v;
  EdgeRef edge_in;
};

struct LerwResult {
  std::vector<PathStep> path;  // loop-erased path, start first
  RootingRecord record;
  // When rooted, path[cycle_start..] plus closing_edge back to
  // path[cycle_start] is the kept oriented cycle.
  std::size_t cycle_start = 0;
  EdgeRef closing_edge = kNoEdge;
  std::uint64_t steps = 0;

  bool rooted() const { return record.rooted(); }
};

struct NullObserver {
  void operator()(Vertex, std::uint64_t) const {}
};

// The p-loop-erased random walk with boundary conditions: simple random walk
// over half-edges; every closed loop is kept with probability p(loop) (the
// walk roots and stops) or erased; hitting the boundary stops the walk
// first. Degenerate closures (same-edge backtracks) weigh 0 and are always
// erased. Equivalent to the naive Z^k erasure recursion; the replay tests
// enforce the equivalence on recorded traces.
//
// The observer is called as obs(vertex, time) after every step, before any
// erasure; stats code uses it to collect shell-hitting times.
template <class G, class BoundaryFn, class Observer = NullObserver>
LerwResult p_lerw(const G& g, const CycleWeightModel& model, Vertex start,
                  BoundaryFn&& in_boundary, std::uint64_t step_cap, RngStream& rng,
                  std::uint64_t* steps_used = nullptr, WalkTrace* trace = nullptr,
                  Observer&& obs = {}) {
  LerwResult res;
  if (trace) {
    trace->start = start;
    trace->verts.clear();
    trace->edges.clear();
    trace->y_at.clear();
    trace->closures.clear();
  }
  if (in_boundary(start)) {
    res.record.t_boundary = 0;
    res.record.t_end = 0;
    return res;
  }

  std::vector<PathStep> path{{start, kNoEdge}};
  std::unordered_map<Vertex, std::size_t> pos;
  pos.reserve(64);
  pos.emplace(start, 0);

  std::vector<Vertex> loop_verts;
  std::vector<EdgeRef> loop_edges;
  std::vector<Coord> loop_coords;

  std::uint64_t base = steps_used ? *steps_used : 0;
  for (std::uint64_t t = 1;; ++t) {
    if (base + t > step_cap) {
      if (steps_used) *steps_used = base + t;
      throw StepCapExceeded(step_cap);
    }
    Vertex cur = path.back().v;
    auto he = g.halfedge(cur, static_cast<int>(rng.next_below(g.degree(cur))));
    if (trace) {
      trace->verts.push_back(he.to);
      trace->edges.push_back(he.edge);
    }
    obs(he.to, t);

    if (in_boundary(he.to)) {
      path.push_back({he.to, he.edge});
      res.record.t_boundary = t;
      res.record.t_end = t;
      res.steps = t;
      break;
    }

    auto it = pos.find(he.to);
    if (it == pos.end()) {
      pos.emplace(he.to, path.size());
      path.push_back({he.to, he.edge});
      continue;
    }

    // Loop closed at time t: path[j..end] plus the new edge.
    std::size_t j = it->second;
    loop_verts.clear();
    loop_edges.clear();
    for (std::size_t i = j; i < path.size(); ++i) {
      loop_verts.push_back(path[i].v);
      loop_edges.push_back(i + 1 < path.size() ? path[i + 1].edge_in : he.edge);
    }
    LoopView lv;
    lv.verts = loop_verts;
    if constexpr (G::tracks_edges) lv.edges = loop_edges;
    if (g.geometric()) {
      loop_coords.resize(loop_verts.size());
      for (std::size_t i = 0; i < loop_verts.size(); ++i)
        loop_coords[i] = g.coord(loop_verts[i]);
      lv.coords = loop_coords;
    }
    double p = model.oriented_weight(lv);
    double y = rng.next_unit();
    if (trace) {
      trace->y_at.emplace(t, y);
      trace->closures.push_back(t);
    }
    if (y < p) {
      res.record.t_root = t;
      res.record.t_end = t;
      res.steps = t;
      res.cycle_start = j;
      res.closing_edge = he.edge;
      break;
    }
    // Erase the loop: the walk continues from path[j].
    for (std::size_t i = j + 1; i < path.size(); ++i) pos.erase(path[i].v);
    path.resize(j + 1);
  }
  if (steps_used) *steps_used = base + res.steps;
  res.path = std::move(path);
  return res;
}

}  // namespace crsf
