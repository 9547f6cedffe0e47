#pragma once
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crsf/enumerate_cycles.hpp"
#include "crsf/exhaustion.hpp"
#include "crsf/lattice.hpp"
#include "crsf/weight_model.hpp"

namespace crsf {

// Certified constants for the rooting-tail machinery: every boundary vertex
// of every probed ball has a witness loop in the next open annulus with
// weight >= alpha, executable by the walk with probability >= beta, giving
// the geometric tail delta = 1 - alpha*beta.
struct AssumptionProfile {
  double alpha = 0;
  double beta = 0;
  double delta = 1;
  double M = 0;       // d(x, boundary of B_n) <= M*n
  double M_prime = 0; // d(x, boundary of B_n) >= M'*n
  double C = 0;       // |boundary of B_n| <= C * n^d
  int d = 1;
  int probe_depth = 0;
  std::string loop_family;
};

struct AssumptionViolation {
  int n = 0;
  Vertex vertex = 0;
  std::string message;
};

using AssumptionCheck = std::variant<AssumptionProfile, AssumptionViolation>;

inline bool assumptions_hold(const AssumptionCheck& c) {
  return std::holds_alternative<AssumptionProfile>(c);
}

namespace detail {

// One candidate witness: walk trajectory v -> (entry steps) -> around the
// loop, with the product of per-step probabilities (half-edges to the target
// over the degree).
struct Witness {
  double weight = 0;
  double prob = 0;
};

// Witness for a boundary vertex of the lattice exhaustion: one step into the
// open annulus, then either the self-loop there or the nearest plaquette
// kept fully inside the annulus.
inline std::optional<Witness> lattice_witness(const SquareLattice& lat,
                                              const CycleWeightModel& model,
                                              const LatticeExhaustion& ex, Coord v, int n) {
  if (ex.radius(n + 1) - ex.radius(n) < 2) return std::nullopt;  // annulus empty or too thin
  // Outward unit step: increase the dominant coordinate.
  Coord c = v;
  int dx = c.x - ex.center.x, dy = c.y - ex.center.y;
  Coord u = c;
  if (std::abs(dx) >= std::abs(dy))
    u.x += dx >= 0 ? 1 : -1;
  else
    u.y += dy >= 0 ? 1 : -1;
  if (!ex.in_open_annulus(u, n)) return std::nullopt;

  double step_p = 1.0 / lat.degree(0);
  std::optional<Witness> best;
  auto consider = [&](double w, double prob) {
    if (w <= 0) return;
    if (!best || w * prob > best->weight * best->prob) best = Witness{w, prob};
  };

  if (lat.has_self_loops()) {
    Vertex uv = pack_xy(u.x, u.y);
    std::vector<Vertex> verts{uv};
    LoopView lv{verts, {}, {}};
    // entry step, then the self-loop (two half-edges).
    consider(model.oriented_weight(lv), step_p * (2.0 * step_p));
  }

  // The four plaquettes cornered at u, each walked from u; weight evaluated
  // on the walked orientation (the built-in families are symmetric).
  const int sx[4] = {1, 1, -1, -1};
  const int sy[4] = {1, -1, 1, -1};
  for (int k = 0; k < 4; ++k) {
    Coord q[4] = {u,
                  {u.x + sx[k], u.y},
                  {u.x + sx[k], u.y + sy[k]},
                  {u.x, u.y + sy[k]}};
    bool ok = true;
    for (const Coord& p : q)
      if (!ex.in_open_annulus(p, n)) ok = false;
    if (!ok) continue;
    std::vector<Vertex> verts(4);
    std::vector<Coord> coords(4);
    for (int i = 0; i < 4; ++i) {
      verts[i] = pack_xy(q[i].x, q[i].y);
      coords[i] = q[i];
    }
    LoopView lv{verts, {}, coords};
    consider(model.oriented_weight(lv), step_p * std::pow(step_p, 4));
  }
  return best;
}

}  // namespace detail

// Probes Assumption-style witnesses for (Z^2, model, ball exhaustion) up to
// probe_depth and measures the geometric constants of the exhaustion.
inline AssumptionCheck check_assumptions(const SquareLattice& lat, const CycleWeightModel& model,
                                         const LatticeExhaustion& ex, int probe_depth) {
  if (!model.bounded_by_one())
    return AssumptionViolation{0, 0, "model is not bounded by one; clamp with w_minus first"};
  AssumptionProfile prof;
  prof.alpha = 2.0;
  prof.beta = 2.0;
  prof.probe_depth = probe_depth;
  prof.loop_family = lat.has_self_loops() ? "annulus plaquettes and self-loops"
                                          : "annulus plaquettes";
  for (int n = 1; n <= probe_depth; ++n) {
    for (Vertex bv : ex.boundary(n)) {
      Coord c = unpack_xy(bv);
      auto w = detail::lattice_witness(lat, model, ex, c, n);
      if (!w)
        return AssumptionViolation{
            n, bv,
            "no positive-weight witness loop in the open annulus between balls " +
                std::to_string(n) + " and " + std::to_string(n + 1)};
      prof.alpha = std::min(prof.alpha, w->weight);
      prof.beta = std::min(prof.beta, w->prob);
    }
    prof.C = std::max(prof.C, static_cast<double>(ex.boundary(n).size()) / n);
  }
  // d(x, boundary of B_n) on Z^2 equals the L_inf radius exactly.
  prof.M = prof.M_prime = static_cast<double>(ex.step);
  prof.d = 1;
  prof.alpha = std::min(prof.alpha, 1.0);
  prof.delta = 1.0 - prof.alpha * prof.beta;
  if (!(prof.alpha > 0) || !(prof.beta > 0) || !(prof.delta > 0 && prof.delta < 1))
    return AssumptionViolation{0, 0, "degenerate certified constants"};
  return prof;
}

// Finite-graph variant with an explicit exhaustion: witnesses are positive
// cycles inside the open annulus reached by a shortest in-annulus entry path.
inline AssumptionCheck check_assumptions(const Multigraph& g, const CycleWeightModel& model,
                                         const ExplicitExhaustion& ex, int probe_depth) {
  if (!model.bounded_by_one())
    return AssumptionViolation{0, 0, "model is not bounded by one; clamp with w_minus first"};
  ex.validate();
  probe_depth = std::min(probe_depth, ex.depth() - 2);
  AssumptionProfile prof;
  prof.alpha = 2.0;
  prof.beta = 2.0;
  prof.probe_depth = probe_depth;
  prof.loop_family = "positive cycles of the open annuli";
  auto classes = enumerate_cycle_classes(g, g.vertex_count());

  for (int n = 1; n <= probe_depth; ++n) {
    std::vector<char> in_bn(g.vertex_count(), 0), in_annulus(g.vertex_count(), 0);
    for (Vertex v : ex.ball(n)) in_bn[v] = 1;
    std::vector<char> bd_next(g.vertex_count(), 0);
    for (Vertex v : ex.boundary(g, n + 1)) bd_next[v] = 1;
    for (Vertex v : ex.ball(n + 1))
      if (!in_bn[v] && !bd_next[v]) in_annulus[v] = 1;

    for (Vertex v : ex.boundary(g, n)) {
      // BFS from v through the annulus; record per-vertex entry probability
      // and parents so entry paths can be checked against the loop.
      std::vector<double> reach_p(g.vertex_count(), 0.0);
      std::vector<Vertex> parent(g.vertex_count(), -1);
      std::vector<Vertex> order;
      reach_p[v] = 1.0;
      order.push_back(v);
      for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex x = order[i];
        for (const auto& he : g.incident(x)) {
          if (!in_annulus[he.to] || reach_p[he.to] > 0 || he.to == x) continue;
          reach_p[he.to] = reach_p[x] / g.degree(x);
          parent[he.to] = x;
          order.push_back(he.to);
        }
      }
      double best = 0, bw = 0, bp = 0;
      for (const auto& cls : classes) {
        bool inside = true;
        for (Vertex cv : cls.rep.verts)
          if (!in_annulus[cv]) inside = false;
        if (!inside) continue;
        double w = model.oriented_weight_on(g, cls.rep);
        if (w <= 0) continue;
        std::vector<char> on_loop(g.vertex_count(), 0);
        for (Vertex cv : cls.rep.verts) on_loop[cv] = 1;
        for (std::size_t r = 0; r < cls.rep.verts.size(); ++r) {
          Vertex start = cls.rep.verts[r];
          if (reach_p[start] <= 0) continue;
          // Entry path must meet the loop only at its start vertex.
          bool clean = true;
          for (Vertex x = parent[start]; x != -1 && x != v; x = parent[x])
            if (on_loop[x]) clean = false;
          if (!clean) continue;
          double p = reach_p[start];
          for (std::size_t s = 0; s < cls.rep.verts.size(); ++s) {
            Vertex from = cls.rep.verts[(r + s) % cls.rep.verts.size()];
            p *= (cls.rep.is_self_loop() ? 2.0 : 1.0) / g.degree(from);
          }
          if (w * p > best) {
            best = w * p;
            bw = w;
            bp = p;
          }
        }
      }
      if (best <= 0)
        return AssumptionViolation{n, v, "no reachable positive-weight loop in annulus"};
      prof.alpha = std::min(prof.alpha, bw);
      prof.beta = std::min(prof.beta, bp);
    }
  }
  prof.alpha = std::min(prof.alpha, 1.0);
  prof.delta = 1.0 - prof.alpha * prof.beta;
  if (!(prof.alpha > 0) || !(prof.beta > 0) || !(prof.delta > 0 && prof.delta < 1))
    return AssumptionViolation{0, 0, "degenerate certified constants"};
  return prof;
}

}  // namespace crsf
