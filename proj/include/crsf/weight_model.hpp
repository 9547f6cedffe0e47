#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "crsf/cycle.hpp"
#include "crsf/multigraph.hpp"

namespace crsf {

namespace detail {
struct CycleKeyHash {
  std::size_t operator()(const OrientedCycle& c) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
      h ^= x;
      h *= 0x100000001b3ULL;
    };
    for (Vertex v : c.verts) feed(static_cast<std::uint64_t>(v));
    feed(0x9e3779b9ULL);
    for (EdgeRef e : c.edges) feed(static_cast<std::uint64_t>(static_cast<std::uint32_t>(e)));
    return static_cast<std::size_t>(h);
  }
};
}  // namespace detail

enum class WeightFamily { Zero, Plaquette, LengthDecay, VertexRooting, ExplicitTable };

// Nonnegative weights on oriented simple cycles. Walked loops that are not
// simple cycles (backtracks and other degenerate closures) always weigh 0,
// so the sampler erases them unconditionally.
//
// A model carries a range flag: bounded_by_one() gates the loop-erased
// samplers. w_minus() returns the clamped model that zeroes every class in
// which either orientation weighs more than 1; the clamped model is always
// bounded and governs conditioning on heavy cycles.
class CycleWeightModel {
 public:
  static CycleWeightModel zero() { return CycleWeightModel(WeightFamily::Zero); }

  static CycleWeightModel plaquette(double alpha) {
    if (alpha < 0) throw std::invalid_argument("plaquette weight must be nonnegative");
    CycleWeightModel m(WeightFamily::Plaquette);
    m.alpha_ = alpha;
    return m;
  }

  static CycleWeightModel length_decay(double kappa) {
    CycleWeightModel m(WeightFamily::LengthDecay);
    m.kappa_ = kappa;
    return m;
  }

  static CycleWeightModel vertex_rooting(double q_default,
                                         std::unordered_map<Vertex, double> q = {}) {
    if (q_default < 0) throw std::invalid_argument("rooting weight must be nonnegative");
    for (const auto& [v, w] : q)
      if (w < 0) throw std::invalid_argument("rooting weight must be nonnegative");
    CycleWeightModel m(WeightFamily::VertexRooting);
    m.q_default_ = q_default;
    m.q_ = std::move(q);
    return m;
  }

  static CycleWeightModel explicit_table() {
    return CycleWeightModel(WeightFamily::ExplicitTable);
  }

  WeightFamily family() const { return family_; }

  // Table entry for one oriented cycle. A key with edge ids matches only that
  // exact cycle; a key without edge ids matches any cycle with that vertex
  // sequence (the file format addresses cycles by vertex list).
  void add_oriented_weight(const OrientedCycle& cycle, double w) {
    if (family_ != WeightFamily::ExplicitTable)
      throw std::logic_error("table entries only apply to explicit-table models");
    if (w < 0) throw std::invalid_argument("cycle weight must be nonnegative");
    OrientedCycle key = canonical_cycle(cycle.verts, cycle.edges);
    if (key.edges.empty())
      by_verts_[key] = w;
    else
      by_exact_[key] = w;
  }

  // Gives both orientations of the class weight w (self-loop: the single one).
  void add_class_weight(const OrientedCycle& cycle, double w) {
    add_oriented_weight(cycle, w);
    add_oriented_weight(reverse_cycle(canonical_cycle(cycle.verts, cycle.edges)), w);
  }

  // Weight of a walked loop; 0 for anything that is not a simple cycle.
  double oriented_weight(const LoopView& lv) const {
    if (!is_simple_loop(lv)) return 0.0;
    double w = raw_weight(lv);
    if (clamp_heavy_ && w > 0.0) {
      if (w > 1.0) return 0.0;
      if (!symmetric_family() && reversed_raw_weight(lv) > 1.0) return 0.0;
    }
    return w;
  }

  template <class G>
  double oriented_weight_on(const G& g, const OrientedCycle& c) const {
    std::vector<Coord> coords;
    return oriented_weight(view_of(g, c, coords));
  }

  // w(gamma) + w(gamma^{-1}); a self-loop (gamma == gamma^{-1}) counts twice,
  // matching the two half-edges it occupies in the walk.
  template <class G>
  double class_weight_on(const G& g, const CycleClass& cls) const {
    if (cls.is_self_loop()) return 2.0 * oriented_weight_on(g, cls.rep);
    return oriented_weight_on(g, cls.rep) + oriented_weight_on(g, reverse_cycle(cls.rep));
  }

  template <class G>
  bool class_is_heavy_on(const G& g, const CycleClass& cls) const {
    std::vector<Coord> coords;
    LoopView lv = view_of(g, cls.rep, coords);
    if (!is_simple_loop(lv)) return false;
    if (raw_weight(lv) > 1.0) return true;
    if (cls.is_self_loop() || symmetric_family()) return false;
    std::vector<Coord> rcoords;
    OrientedCycle rev = reverse_cycle(cls.rep);
    return raw_weight(view_of(g, rev, rcoords)) > 1.0;
  }

  bool bounded_by_one() const {
    if (clamp_heavy_) return true;
    switch (family_) {
      case WeightFamily::Zero: return true;
      case WeightFamily::Plaquette: return alpha_ <= 1.0;
      case WeightFamily::LengthDecay: return kappa_ >= 0.0;
      case WeightFamily::VertexRooting: {
        if (q_default_ > 1.0) return false;
        for (const auto& [v, w] : q_)
          if (w > 1.0) return false;
        return true;
      }
      case WeightFamily::ExplicitTable: {
        for (const auto& [k, w] : by_exact_)
          if (w > 1.0) return false;
        for (const auto& [k, w] : by_verts_)
          if (w > 1.0) return false;
        return true;
      }
    }
    return false;
  }

  CycleWeightModel w_minus() const {
    CycleWeightModel m = *this;
    m.clamp_heavy_ = true;
    return m;
  }
  bool is_clamped() const { return clamp_heavy_; }

  double plaquette_alpha() const { return alpha_; }
  double decay_kappa() const { return kappa_; }
  double rooting_default() const { return q_default_; }
  const std::unordered_map<Vertex, double>& rooting_table() const { return q_; }
  const std::unordered_map<OrientedCycle, double, detail::CycleKeyHash>& table_exact() const {
    return by_exact_;
  }
  const std::unordered_map<OrientedCycle, double, detail::CycleKeyHash>& table_by_verts() const {
    return by_verts_;
  }

 private:
  explicit CycleWeightModel(WeightFamily f) : family_(f) {}

  bool symmetric_family() const { return family_ != WeightFamily::ExplicitTable; }

  template <class G>
  LoopView view_of(const G& g, const OrientedCycle& c, std::vector<Coord>& scratch) const {
    LoopView lv;
    lv.verts = c.verts;
    lv.edges = c.edges;
    if (family_ == WeightFamily::Plaquette && g.geometric()) {
      scratch.resize(c.verts.size());
      for (std::size_t i = 0; i < c.verts.size(); ++i) scratch[i] = g.coord(c.verts[i]);
      lv.coords = scratch;
    }
    return lv;
  }

  double raw_weight(const LoopView& lv) const {
    switch (family_) {
      case WeightFamily::Zero: return 0.0;
      case WeightFamily::Plaquette: return is_unit_square(lv) ? alpha_ : 0.0;
      case WeightFamily::LengthDecay:
        return std::exp(-kappa_ * static_cast<double>(lv.length()));
      case WeightFamily::VertexRooting: {
        if (lv.length() != 1) return 0.0;
        auto it = q_.find(lv.verts[0]);
        return it != q_.end() ? it->second : q_default_;
      }
      case WeightFamily::ExplicitTable: {
        OrientedCycle key = canonical_cycle(lv);
        if (!key.edges.empty()) {
          auto it = by_exact_.find(key);
          if (it != by_exact_.end()) return it->second;
          key.edges.clear();
        }
        auto it = by_verts_.find(key);
        return it != by_verts_.end() ? it->second : 0.0;
      }
    }
    return 0.0;
  }

  double reversed_raw_weight(const LoopView& lv) const {
    std::size_t k = lv.verts.size();
    std::vector<Vertex> rv(k);
    std::vector<EdgeRef> re;
    std::vector<Coord> rc;
    rv[0] = lv.verts[0];
    for (std::size_t i = 1; i < k; ++i) rv[i] = lv.verts[k - i];
    if (!lv.edges.empty()) {
      re.resize(k);
      for (std::size_t i = 0; i < k; ++i) re[i] = lv.edges[k - 1 - i];
    }
    if (!lv.coords.empty()) {
      rc.resize(k);
      rc[0] = lv.coords[0];
      for (std::size_t i = 1; i < k; ++i) rc[i] = lv.coords[k - i];
    }
    return raw_weight(LoopView{rv, re, rc});
  }

  static bool is_unit_square(const LoopView& lv) {
    if (lv.length() != 4 || lv.coords.size() != 4) return false;
    for (int i = 0; i < 4; ++i) {
      Coord a = lv.coords[i], b = lv.coords[(i + 1) % 4];
      int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
      int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
      if (dx + dy != 1) return false;
    }
    return true;  // 4 distinct vertices + unit steps + closed => unit square
  }

  WeightFamily family_;
  bool clamp_heavy_ = false;
  double alpha_ = 0.0;
  double kappa_ = 0.0;
  double q_default_ = 0.0;
  std::unordered_map<Vertex, double> q_;
  std::unordered_map<OrientedCycle, double, detail::CycleKeyHash> by_exact_;
  std::unordered_map<OrientedCycle, double, detail::CycleKeyHash> by_verts_;
};

}  // namespace crsf
