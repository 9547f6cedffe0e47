#pragma once
#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crsf/enumerate_cycles.hpp"
#include "crsf/exact.hpp"
#include "crsf/lattice.hpp"
#include "crsf/multigraph.hpp"
#include "crsf/walk.hpp"

namespace crsf {

struct SamplerParams {
  std::uint64_t seed = 1;
  std::uint64_t step_cap = 100'000'000;  // total walk steps per sampler call
};

// One sampled (E)CRSF of a finite graph, as the oriented successor structure.
// Boundary vertices keep succ = -1. The undirected edge set of F is exactly
// { succ_edge[v] : v not in W }.
struct FiniteSample {
  std::vector<Vertex> succ;
  std::vector<EdgeRef> succ_edge;
  std::vector<CycleClass> cycles;  // kept cycles, canonical classes
  std::uint64_t steps = 0;
};

inline EdgeMask sample_mask(const FiniteSample& s) {
  EdgeMask m = 0;
  for (EdgeRef e : s.succ_edge)
    if (e != kNoEdge) m |= EdgeMask{1} << e;
  return m;
}

// Termination condition of the finite algorithm: the walk set can always
// finish iff W is nonempty or some cycle avoiding W has positive weight.
inline bool sampler_can_terminate(const Multigraph& g, const CycleWeightModel& model,
                                  const std::vector<Vertex>& W) {
  if (!W.empty()) return true;
  std::vector<char> in_w(g.vertex_count(), 0);
  for (Vertex v : W) in_w[v] = 1;
  for (const auto& cls : enumerate_cycle_classes(g, g.vertex_count())) {
    bool avoids = true;
    for (Vertex v : cls.rep.verts)
      if (in_w[v]) avoids = false;
    if (avoids && model.class_weight_on(g, cls) > 0) return true;
  }
  return false;
}

namespace detail {

inline void require_bounded(const CycleWeightModel& model) {
  if (!model.bounded_by_one())
    throw std::invalid_argument(
        "sampler requires a bounded-by-one model; clamp heavy cycles with w_minus "
        "or use the exact engine");
}

// Installs one finished walk into the successor structure. Boundary-ended
// walks leave their terminal (already settled) untouched; rooted walks close
// the kept cycle. Returns the kept cycle when there is one.
inline std::optional<CycleClass> commit_walk(const Multigraph& g, const LerwResult& walk,
                                             std::vector<char>& settled, FiniteSample& out) {
  const auto& p = walk.path;
  if (p.empty()) return std::nullopt;
  std::size_t last = p.size() - 1;
  std::size_t upto = walk.rooted() ? p.size() : last;
  for (std::size_t i = 0; i < upto; ++i) {
    assert(!settled[p[i].v] && "settled successor must never change");
    settled[p[i].v] = 1;
    if (i < last) {
      out.succ[p[i].v] = p[i + 1].v;
      out.succ_edge[p[i].v] = p[i + 1].edge_in;
    } else {
      out.succ[p[i].v] = p[walk.cycle_start].v;
      out.succ_edge[p[i].v] = walk.closing_edge;
    }
  }
  if (!walk.rooted()) return std::nullopt;
  std::vector<Vertex> cv;
  std::vector<EdgeRef> ce;
  for (std::size_t i = walk.cycle_start; i < p.size(); ++i) {
    cv.push_back(p[i].v);
    ce.push_back(i + 1 < p.size() ? p[i + 1].edge_in : walk.closing_edge);
  }
  (void)g;
  return make_class(canonical_cycle(cv, ce));
}

}  // namespace detail

// Wilson-style sweep: a p-LERW from every unsettled vertex in order, with the
// already-settled set as boundary. F_0 = W (empty for the free ensemble).
inline FiniteSample sample_finite(const Multigraph& g, const CycleWeightModel& model,
                                  const std::vector<Vertex>& W,
                                  std::span<const Vertex> ordering, const SamplerParams& params,
                                  std::uint64_t replica = 0) {
  detail::require_bounded(model);
  int n = g.vertex_count();
  FiniteSample out;
  out.succ.assign(n, -1);
  out.succ_edge.assign(n, kNoEdge);
  std::vector<char> settled(n, 0);
  for (Vertex w : W) settled[w] = 1;

  std::uint64_t steps = 0;
  auto in_boundary = [&settled](Vertex v) { return settled[v] != 0; };
  auto run_from = [&](Vertex v, std::uint64_t rank) {
    if (settled[v]) return;
    RngStream rng = RngStream::derive(params.seed, replica, rank);
    LerwResult walk = p_lerw(g, model, v, in_boundary, params.step_cap, rng, &steps);
    auto cycle = detail::commit_walk(g, walk, settled, out);
    if (cycle) out.cycles.push_back(*cycle);
  };
  if (ordering.empty()) {
    for (Vertex v = 0; v < n; ++v) run_from(v, static_cast<std::uint64_t>(v));
  } else {
    for (std::size_t r = 0; r < ordering.size(); ++r) run_from(ordering[r], r);
  }
  for (Vertex v = 0; v < n; ++v)
    if (!settled[v]) throw std::invalid_argument("ordering does not cover every vertex");
  out.steps = steps;
  return out;
}

inline FiniteSample sample_finite_free(const Multigraph& g, const CycleWeightModel& model,
                                       const SamplerParams& params, std::uint64_t replica = 0,
                                       std::span<const Vertex> ordering = {}) {
  return sample_finite(g, model, {}, ordering, params, replica);
}

inline FiniteSample sample_finite_wired(const Multigraph& g, const std::vector<Vertex>& W,
                                        const CycleWeightModel& model,
                                        const SamplerParams& params, std::uint64_t replica = 0,
                                        std::span<const Vertex> ordering = {}) {
  return sample_finite(g, model, W, ordering, params, replica);
}

// Conditional sampler (heavy cycles pinned): wired run on W u A under the
// clamped model, then the pinned cycles are laid back in.
inline FiniteSample sample_conditioned(const Multigraph& g, const std::vector<Vertex>& W,
                                       const std::vector<CycleClass>& C,
                                       const CycleWeightModel& model,
                                       const SamplerParams& params, std::uint64_t replica = 0,
                                       std::span<const Vertex> ordering = {}) {
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex w : W) seen[w] = 2;
  for (const auto& cls : C) {
    if (!model.class_is_heavy_on(g, cls))
      throw std::invalid_argument("conditioning cycles must be heavy (weight > 1)");
    for (Vertex v : cls.rep.verts) {
      if (seen[v]) throw std::invalid_argument("conditioning cycles must be vertex-disjoint and avoid W");
      seen[v] = 1;
    }
  }
  std::vector<Vertex> w2 = W;
  auto a = cycles_vertex_set(C);
  w2.insert(w2.end(), a.begin(), a.end());
  std::sort(w2.begin(), w2.end());
  w2.erase(std::unique(w2.begin(), w2.end()), w2.end());

  FiniteSample s = sample_finite(g, model.w_minus(), w2, ordering, params, replica);
  for (const auto& cls : C) {
    const auto& rep = cls.rep;
    for (std::size_t i = 0; i < rep.verts.size(); ++i) {
      s.succ[rep.verts[i]] = rep.verts[(i + 1) % rep.verts.size()];
      s.succ_edge[rep.verts[i]] = rep.edges[i];
    }
    s.cycles.push_back(cls);
  }
  return s;
}

// ----------------------------------------------------------------------
// Infinite-volume sampling on the lattice.

// Successor structure over the settled part of the lattice.
struct LatticeForest {
  std::unordered_map<Vertex, Vertex> succ;
  std::vector<CycleClass> cycles;
  std::uint64_t steps = 0;
  int walks = 0;
};

namespace detail {

inline std::optional<CycleClass> commit_walk_lattice(const LerwResult& walk,
                                                     LatticeForest& forest) {
  const auto& p = walk.path;
  if (p.empty()) return std::nullopt;
  std::size_t last = p.size() - 1;
  std::size_t upto = walk.rooted() ? p.size() : last;
  for (std::size_t i = 0; i < upto; ++i) {
    Vertex next = (i < last) ? p[i + 1].v : p[walk.cycle_start].v;
    auto [it, inserted] = forest.succ.emplace(p[i].v, next);
    assert(inserted && "settled successor must never change");
    (void)it;
    (void)inserted;
  }
  if (!walk.rooted()) return std::nullopt;
  std::vector<Vertex> cv;
  for (std::size_t i = walk.cycle_start; i < p.size(); ++i) cv.push_back(p[i].v);
  return make_class(canonical_cycle(cv, {}));
}

}  // namespace detail

// Runs the infinite-volume algorithm for the window vertices, in the given
// order. Settled successors are final, so the window restriction of F is
// already determined when the sweep finishes.
inline LatticeForest sample_window_infinite(const SquareLattice& lat,
                                            const CycleWeightModel& model,
                                            std::span<const Vertex> window,
                                            const SamplerParams& params,
                                            std::uint64_t replica = 0) {
  detail::require_bounded(model);
  LatticeForest forest;
  auto in_boundary = [&forest](Vertex v) { return forest.succ.count(v) != 0; };
  for (std::size_t r = 0; r < window.size(); ++r) {
    Vertex v = window[r];
    if (forest.succ.count(v)) continue;
    RngStream rng = RngStream::derive(params.seed, replica, r);
    LerwResult walk = p_lerw(lat, model, v, in_boundary, params.step_cap, rng, &forest.steps);
    ++forest.walks;
    auto cycle = detail::commit_walk_lattice(walk, forest);
    if (cycle) forest.cycles.push_back(*cycle);
  }
  return forest;
}

// Undirected edge {u,v} of the lattice is in F iff s(u)=v or s(v)=u; the
// self-loop at v is in F iff s(v)=v.
inline bool edge_in_forest(const LatticeForest& f, Vertex u, Vertex v) {
  auto iu = f.succ.find(u);
  if (iu != f.succ.end() && iu->second == v) return true;
  auto iv = f.succ.find(v);
  return iv != f.succ.end() && iv->second == u;
}

struct ComponentReport {
  Vertex origin = 0;
  std::vector<Vertex> verts;  // sorted
  std::optional<CycleClass> cycle;
  bool complete = false;           // exploration finished under the cap
  std::optional<bool> target_hit;  // set when a target vertex was given
  std::uint64_t steps = 0;
  int walks = 0;
};

// Adaptive component explorer: settles the origin's walk, then keeps running
// p-LERWs from unsettled lattice neighbors of the component until none
// remain. A walk's vertices join the component exactly when the walk
// attaches to it; walks that root elsewhere or attach to foreign paths stay
// outside. With a target vertex, exploration stops as soon as the target's
// membership is decided.
inline ComponentReport explore_component(const SquareLattice& lat,
                                         const CycleWeightModel& model, Vertex origin,
                                         const SamplerParams& params, std::uint64_t replica = 0,
                                         std::optional<Vertex> target = std::nullopt) {
  detail::require_bounded(model);
  ComponentReport report;
  report.origin = origin;

  LatticeForest forest;
  std::unordered_set<Vertex> comp;
  std::deque<Vertex> frontier;
  auto in_boundary = [&forest](Vertex v) { return forest.succ.count(v) != 0; };

  auto enqueue_neighbors = [&](Vertex v) {
    for (int k = 0; k < 4; ++k) {
      Vertex u = lat.halfedge(v, k).to;
      if (!forest.succ.count(u)) frontier.push_back(u);
    }
  };
  auto join = [&](Vertex v) {
    if (comp.insert(v).second) enqueue_neighbors(v);
  };

  try {
    {
      RngStream rng = RngStream::derive(params.seed, replica, 0);
      LerwResult walk =
          p_lerw(lat, model, origin, in_boundary, params.step_cap, rng, &forest.steps);
      ++forest.walks;
      report.cycle = detail::commit_walk_lattice(walk, forest);
      for (const auto& st : walk.path) join(st.v);
    }
    while (!frontier.empty()) {
      if (target && forest.succ.count(*target)) break;
      Vertex y = frontier.front();
      frontier.pop_front();
      if (forest.succ.count(y)) continue;
      RngStream rng =
          RngStream::derive(params.seed, replica, static_cast<std::uint64_t>(forest.walks));
      LerwResult walk = p_lerw(lat, model, y, in_boundary, params.step_cap, rng, &forest.steps);
      ++forest.walks;
      detail::commit_walk_lattice(walk, forest);
      bool attached = !walk.rooted() && !walk.path.empty() && comp.count(walk.path.back().v);
      if (attached)
        for (const auto& st : walk.path) join(st.v);
    }
    report.complete = true;
  } catch (const StepCapExceeded&) {
    report.complete = false;
  }

  if (target) report.target_hit = comp.count(*target) != 0;
  report.verts.assign(comp.begin(), comp.end());
  std::sort(report.verts.begin(), report.verts.end());
  report.steps = forest.steps;
  report.walks = forest.walks;
  return report;
}

}  // namespace crsf
