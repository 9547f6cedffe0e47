#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "crsf/cycle.hpp"
#include "crsf/multigraph.hpp"
#include "crsf/weight_model.hpp"

namespace crsf {

// Exhaustive CRSF/ECRSF ensembles for small graphs: the oracle layer the
// samplers are validated against. Configurations are edge subsets stored as
// bitmasks (the enumeration cap keeps |E| <= 32).

using EdgeMask = std::uint32_t;

struct EnsembleConfig {
  EdgeMask mask = 0;
  std::vector<CycleClass> cycles;  // one per unicyclic component, canonical
};

enum class EnsembleFlavor { Free, Wired };

struct EnsembleTable {
  EnsembleFlavor flavor = EnsembleFlavor::Free;
  std::vector<Vertex> boundary;  // W; empty for the free ensemble
  std::vector<EnsembleConfig> configs;
};

struct ExactDistribution {
  std::vector<double> prob;  // aligned with table.configs
  double partition = 0;      // Z_w
};

struct EnumerationRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeasureUndefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

// Leaf-strip the chosen subgraph; what remains is the disjoint union of the
// component cycles. Valid configurations have exactly one cycle per
// unicyclic component.
inline std::vector<CycleClass> extract_cycles(const Multigraph& g, EdgeMask mask) {
  int n = g.vertex_count();
  std::vector<std::vector<Multigraph::HalfEdge>> adj(n);
  std::vector<int> deg(n, 0);
  std::vector<char> edge_alive(g.edge_count(), 0);
  for (EdgeRef e = 0; e < g.edge_count(); ++e) {
    if (!(mask >> e & 1u)) continue;
    edge_alive[e] = 1;
    auto [u, v] = g.edge(e);
    adj[u].push_back({v, e});
    if (u != v) adj[v].push_back({u, e});
    deg[u] += (u == v) ? 2 : 1;
    if (u != v) deg[v] += 1;
  }
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push_back(v);
  while (!leaves.empty()) {
    Vertex v = leaves.back();
    leaves.pop_back();
    if (deg[v] != 1) continue;
    for (const auto& he : adj[v])
      if (edge_alive[he.edge]) {
        edge_alive[he.edge] = 0;
        --deg[v];
        --deg[he.to];
        if (deg[he.to] == 1) leaves.push_back(he.to);
        break;
      }
  }
  // Remaining alive edges form vertex-disjoint simple cycles; walk them.
  std::vector<CycleClass> cycles;
  std::vector<char> edge_used(g.edge_count(), 0);
  for (EdgeRef e0 = 0; e0 < g.edge_count(); ++e0) {
    if (!edge_alive[e0] || edge_used[e0]) continue;
    std::vector<Vertex> verts;
    std::vector<EdgeRef> edges;
    Vertex start = g.edge(e0).u;
    Vertex v = start;
    EdgeRef prev = kNoEdge;
    do {
      verts.push_back(v);
      EdgeRef chosen = kNoEdge;
      for (const auto& he : adj[v])
        if (edge_alive[he.edge] && !edge_used[he.edge] && he.edge != prev) {
          chosen = he.edge;
          v = he.to;
          break;
        }
      if (chosen == kNoEdge) break;
      edge_used[chosen] = 1;
      edges.push_back(chosen);
      prev = chosen;
    } while (v != start);
    cycles.push_back(make_class(canonical_cycle(verts, edges)));
  }
  return cycles;
}

template <class Fn>
inline void for_each_subset_of_size(int m, int k, Fn&& fn) {
  if (k < 0 || k > m) return;
  if (k == 0) {
    fn(EdgeMask{0});
    return;
  }
  EdgeMask mask = (k == 32) ? ~EdgeMask{0} : ((EdgeMask{1} << k) - 1);
  EdgeMask limit = (m == 32) ? ~EdgeMask{0} : ((EdgeMask{1} << m) - 1);
  while (true) {
    fn(mask);
    if (mask == (limit & ~((EdgeMask{1} << (m - k)) - 1))) break;
    EdgeMask c = mask & (~mask + 1);
    EdgeMask r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;  // Gosper's hack
  }
}

}  // namespace detail

inline void check_enumeration_cap(const Multigraph& g, int cap) {
  if (g.edge_count() > cap || g.edge_count() > 32)
    throw EnumerationRefused("refusing to enumerate " + std::to_string(g.edge_count()) +
                             " edges (roughly 2^" + std::to_string(g.edge_count()) +
                             " subsets); cap is " + std::to_string(cap));
}

// All CRSFs of g: edge subsets of size |V| in which every component has
// exactly as many edges as vertices (one cycle each).
inline EnsembleTable enumerate_crsf(const Multigraph& g, int cap = 24) {
  check_enumeration_cap(g, cap);
  int n = g.vertex_count();
  EnsembleTable table;
  table.flavor = EnsembleFlavor::Free;
  detail::for_each_subset_of_size(g.edge_count(), n, [&](EdgeMask mask) {
    detail::UnionFind uf(n);
    std::vector<int> edge_cnt(n, 0);
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      if (mask >> e & 1u) uf.unite(static_cast<int>(g.edge(e).u), static_cast<int>(g.edge(e).v));
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      if (mask >> e & 1u) ++edge_cnt[uf.find(static_cast<int>(g.edge(e).u))];
    std::vector<int> vert_cnt(n, 0);
    for (int v = 0; v < n; ++v) ++vert_cnt[uf.find(v)];
    for (int v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      if (edge_cnt[v] != vert_cnt[v]) return;
    }
    table.configs.push_back({mask, detail::extract_cycles(g, mask)});
  });
  return table;
}

// All ECRSFs of g with respect to W: every component is a unicycle disjoint
// from W or a tree containing exactly one vertex of W.
inline EnsembleTable enumerate_ecrsf(const Multigraph& g, const std::vector<Vertex>& W,
                                     int cap = 24) {
  check_enumeration_cap(g, cap);
  int n = g.vertex_count();
  std::vector<char> in_w(n, 0);
  for (Vertex v : W) in_w[v] = 1;
  int w_total = 0;
  for (int v = 0; v < n; ++v) w_total += in_w[v];

  EnsembleTable table;
  table.flavor = EnsembleFlavor::Wired;
  table.boundary = W;
  auto consider = [&](EdgeMask mask) {
    detail::UnionFind uf(n);
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      if (mask >> e & 1u) uf.unite(static_cast<int>(g.edge(e).u), static_cast<int>(g.edge(e).v));
    std::vector<int> edge_cnt(n, 0), vert_cnt(n, 0), w_cnt(n, 0);
    for (EdgeRef e = 0; e < g.edge_count(); ++e)
      if (mask >> e & 1u) ++edge_cnt[uf.find(static_cast<int>(g.edge(e).u))];
    for (int v = 0; v < n; ++v) {
      int r = uf.find(v);
      ++vert_cnt[r];
      w_cnt[r] += in_w[v];
    }
    for (int v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      bool unicycle = edge_cnt[v] == vert_cnt[v] && w_cnt[v] == 0;
      bool rooted_tree = edge_cnt[v] == vert_cnt[v] - 1 && w_cnt[v] == 1;
      if (!unicycle && !rooted_tree) return;
    }
    table.configs.push_back({mask, detail::extract_cycles(g, mask)});
  };
  // Each W vertex sits in exactly one boundary-rooted tree and every tree
  // holds exactly one W vertex, so |E(F)| = |V| - |W| for every ECRSF.
  detail::for_each_subset_of_size(g.edge_count(), n - w_total, consider);
  return table;
}

// Boltzmann distribution: P(F) proportional to the product of class weights
// over the cycles of F (empty product = 1). Real = double for the fast path
// or an exact rational type for the identity checks.
template <class Real = double>
inline std::vector<Real> config_weights(const Multigraph& g, const EnsembleTable& table,
                                        const CycleWeightModel& model) {
  std::vector<Real> w;
  w.reserve(table.configs.size());
  for (const auto& cfg : table.configs) {
    Real prod(1);
    for (const auto& cls : cfg.cycles) prod *= Real(model.class_weight_on(g, cls));
    w.push_back(prod);
  }
  return w;
}

inline ExactDistribution boltzmann(const Multigraph& g, const EnsembleTable& table,
                                   const CycleWeightModel& model) {
  auto w = config_weights(g, table, model);
  double z = 0;
  for (double x : w) z += x;
  if (!(z > 0))
    throw MeasureUndefined("partition function is zero; the measure is undefined");
  ExactDistribution dist;
  dist.partition = z;
  dist.prob.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) dist.prob[i] = w[i] / z;
  return dist;
}

// Conditioning machinery (heavy cycles, Section-6 style). A class is heavy
// when either orientation weighs more than 1; conditioning fixes the set of
// heavy classes present in the configuration.

inline std::vector<CycleClass> heavy_signature(const Multigraph& g,
                                               const CycleWeightModel& model,
                                               const EnsembleConfig& cfg) {
  std::vector<CycleClass> sig;
  for (const auto& cls : cfg.cycles)
    if (model.class_is_heavy_on(g, cls)) sig.push_back(cls);
  std::sort(sig.begin(), sig.end());
  return sig;
}

inline EdgeMask cycles_mask(const std::vector<CycleClass>& cycles) {
  EdgeMask m = 0;
  for (const auto& cls : cycles)
    for (EdgeRef e : cls.rep.edges) m |= EdgeMask{1} << e;
  return m;
}

inline std::vector<Vertex> cycles_vertex_set(const std::vector<CycleClass>& cycles) {
  std::vector<Vertex> a;
  for (const auto& cls : cycles) a.insert(a.end(), cls.rep.verts.begin(), cls.rep.verts.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Law of F \ C conditional on the heavy-cycle set of F being exactly C,
// read directly off the wired table. Keys are edge masks of F \ C.
template <class Real = double>
inline std::map<EdgeMask, Real> conditional_distribution(const Multigraph& g,
                                                         const EnsembleTable& table,
                                                         const CycleWeightModel& model,
                                                         const std::vector<CycleClass>& C) {
  std::vector<CycleClass> want = C;
  std::sort(want.begin(), want.end());
  EdgeMask cmask = cycles_mask(want);
  auto weights = config_weights<Real>(g, table, model);
  std::map<EdgeMask, Real> out;
  Real total(0);
  for (std::size_t i = 0; i < table.configs.size(); ++i) {
    if (heavy_signature(g, model, table.configs[i]) != want) continue;
    out[table.configs[i].mask & ~cmask] += weights[i];
    total += weights[i];
  }
  if (!(total > 0))
    throw MeasureUndefined("conditioning event has probability zero");
  for (auto& [k, v] : out) v /= total;
  return out;
}

// Max absolute probability discrepancy between the conditional law of F \ C
// and the wired Boltzmann law on U_{W u A} under w_minus, over every
// realizable heavy set C. An exact identity: ~1e-16 in doubles, 0 in
// rational arithmetic.
template <class Real = double>
inline double verify_conditioning(const Multigraph& g, const CycleWeightModel& model,
                                  const std::vector<Vertex>& W, int cap = 24) {
  EnsembleTable table = enumerate_ecrsf(g, W, cap);
  auto weights = config_weights<Real>(g, table, model);

  std::map<std::vector<CycleClass>, Real> group_weight;
  for (std::size_t i = 0; i < table.configs.size(); ++i)
    group_weight[heavy_signature(g, model, table.configs[i])] += weights[i];

  CycleWeightModel light = model.w_minus();
  double worst = 0;
  for (const auto& [sig, gw] : group_weight) {
    if (!(gw > 0)) continue;  // conditioning event has probability zero
    auto cond = conditional_distribution<Real>(g, table, model, sig);

    std::vector<Vertex> w2 = W;
    auto a = cycles_vertex_set(sig);
    w2.insert(w2.end(), a.begin(), a.end());
    std::sort(w2.begin(), w2.end());
    w2.erase(std::unique(w2.begin(), w2.end()), w2.end());

    EnsembleTable table2 = enumerate_ecrsf(g, w2, cap);
    auto weights2 = config_weights<Real>(g, table2, light);
    Real z2(0);
    for (const auto& x : weights2) z2 += x;
    std::map<EdgeMask, Real> wired;
    for (std::size_t i = 0; i < table2.configs.size(); ++i)
      wired[table2.configs[i].mask] += weights2[i];

    for (auto& [mask, p] : cond) {
      Real q = z2 > 0 ? wired.count(mask) ? wired[mask] / z2 : Real(0) : Real(0);
      double diff = std::abs(static_cast<double>(p - q));
      worst = std::max(worst, diff);
    }
    for (auto& [mask, wq] : wired) {
      if (cond.count(mask)) continue;
      Real q = z2 > 0 ? wq / z2 : Real(0);
      worst = std::max(worst, std::abs(static_cast<double>(q)));
    }
  }
  return worst;
}

}  // namespace crsf
