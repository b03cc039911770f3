#pragma once

#include "tvg/core.hpp"

#include <boost/dynamic_bitset.hpp>

#include <bit>

namespace tvg {

using Bits = boost::dynamic_bitset<>;

/// Reachability relation: reach[u][v] iff u ~> v (u != v; reflexivity implied).
struct Closure {
  Names nodes;
  std::vector<Bits> reach;

  std::size_t n() const { return nodes.size(); }
  bool has(Vertex u, Vertex v) const { return u == v || reach[u][v]; }
  std::vector<std::pair<Vertex, Vertex>> arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v = 0; v < n(); ++v)
        if (u != v && reach[u][v]) out.emplace_back(u, v);
    return out;
  }
  bool complete() const {
    for (Vertex u = 0; u < n(); ++u)
      if (reach[u].count() + 1 < n()) return false;
    return true;
  }
};

/// Chronological scan: each edge of snapshot i extends its endpoints'
/// predecessor sets with the other endpoint's predecessors as frozen before i.
inline Closure strict_closure(const SnapshotSequence& s) {
  auto n = s.n();
  std::vector<Bits> pred(n, Bits(n));
  for (const auto& snap : s.snapshots) {
    auto frozen = pred;
    for (auto e : snap) {
      pred[e.v] |= frozen[e.u];
      pred[e.v].set(e.u);
      pred[e.u] |= frozen[e.v];
      pred[e.u].set(e.v);
    }
  }
  Closure c{s.nodes, std::vector<Bits>(n, Bits(n))};
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = 0; u < n; ++u)
      if (u != v && pred[v][u]) c.reach[u].set(v);
  return c;
}

/// Same-snapshot multi-hop journeys become single hops once every snapshot is
/// replaced by the cliques of its connected components.
inline SnapshotSequence component_closure(const SnapshotSequence& s) {
  SnapshotSequence out{s.nodes, {}};
  for (const auto& snap : s.snapshots) out.snapshots.push_back(component_cliques(s.n(), snap));
  return out;
}

inline Closure nonstrict_closure(const SnapshotSequence& s) { return strict_closure(component_closure(s)); }

inline Closure closure(const SnapshotSequence& s, Kind k) {
  return k == Kind::strict ? strict_closure(s) : nonstrict_closure(s);
}

/// Window [start, end) of snapshot indices with per-arc earliest arrival and
/// latest departure. Loops (u,u) are implicit.
struct RoundTripClosure {
  std::size_t n = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::vector<std::optional<std::int64_t>> ea;  // row-major n*n
  std::vector<std::optional<std::int64_t>> ld;

  bool has(Vertex u, Vertex v) const { return u == v || ea[u * n + v].has_value(); }
  std::optional<std::int64_t> ea_at(Vertex u, Vertex v) const { return u == v ? std::optional(start) : ea[u * n + v]; }
  std::optional<std::int64_t> ld_at(Vertex u, Vertex v) const { return u == v ? std::optional(end) : ld[u * n + v]; }
  friend bool operator==(const RoundTripClosure&, const RoundTripClosure&) = default;
};

inline RoundTripClosure roundtrip_closure(const SnapshotSequence& s, std::int64_t start, std::int64_t end, Kind kind) {
  if (start < 0 || end > static_cast<std::int64_t>(s.length()) || start >= end)
    throw range_error("round-trip window outside the sequence");
  auto n = s.n();
  RoundTripClosure r{n, start, end, std::vector<std::optional<std::int64_t>>(n * n), std::vector<std::optional<std::int64_t>>(n * n)};
  auto snap = [&](std::int64_t i) {
    const auto& es = s.snapshots[static_cast<std::size_t>(i)];
    return kind == Kind::strict ? es : component_cliques(n, es);
  };
  std::vector<Bits> pred(n, Bits(n));
  for (Vertex v = 0; v < n; ++v) pred[v].set(v);
  for (auto i = start; i < end; ++i) {
    auto frozen = pred;
    for (auto e : snap(i)) {
      pred[e.v] |= frozen[e.u];
      pred[e.u] |= frozen[e.v];
    }
    for (Vertex v = 0; v < n; ++v) {
      auto fresh = pred[v] - frozen[v];
      for (auto u = fresh.find_first(); u != Bits::npos; u = fresh.find_next(u)) r.ea[u * n + v] = i;
    }
  }
  std::vector<Bits> succ(n, Bits(n));
  for (Vertex v = 0; v < n; ++v) succ[v].set(v);
  for (auto i = end - 1; i >= start; --i) {
    auto frozen = succ;
    for (auto e : snap(i)) {
      succ[e.u] |= frozen[e.v];
      succ[e.v] |= frozen[e.u];
    }
    for (Vertex u = 0; u < n; ++u) {
      auto fresh = succ[u] - frozen[u];
      for (auto v = fresh.find_first(); v != Bits::npos; v = fresh.find_next(v)) r.ld[u * n + v] = i;
    }
  }
  return r;
}

/// Composition over adjacent windows. A journey of the joint window lies in
/// A, in B, or crosses from A to B through a relay w; earliest arrivals come
/// from the last part that moves, latest departures from the first.
inline RoundTripClosure concat_roundtrip(const RoundTripClosure& a, const RoundTripClosure& b) {
  if (a.end != b.start) throw contract_error("round-trip closures must cover adjacent windows");
  if (a.n != b.n) throw contract_error("round-trip closures over different node sets");
  auto n = a.n;
  RoundTripClosure r{n, a.start, b.end, std::vector<std::optional<std::int64_t>>(n * n), std::vector<std::optional<std::int64_t>>(n * n)};
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      std::optional<std::int64_t> ea, ld;
      auto take_ea = [&](std::optional<std::int64_t> x) {
        if (x && (!ea || *x < *ea)) ea = x;
      };
      auto take_ld = [&](std::optional<std::int64_t> x) {
        if (x && (!ld || *x > *ld)) ld = x;
      };
      for (Vertex w = 0; w < n; ++w) {
        if (!a.has(u, w) || !b.has(w, v)) continue;
        take_ea(w == v ? a.ea_at(u, v) : b.ea_at(w, v));
        take_ld(w == u ? b.ld_at(u, v) : a.ld_at(u, w));
      }
      r.ea[u * n + v] = ea;
      r.ld[u * n + v] = ld;
    }
  return r;
}

/// Every ordered pair can go and come back: ea(u,v) < ld(v,u) for strict
/// journeys, <= for non-strict ones.
inline bool roundtrip_complete(const RoundTripClosure& r, Kind kind) {
  for (Vertex u = 0; u < r.n; ++u)
    for (Vertex v = 0; v < r.n; ++v) {
      if (u == v) continue;
      auto go = r.ea_at(u, v);
      auto back = r.ld_at(v, u);
      if (!go || !back) return false;
      if (kind == Kind::strict ? !(*go < *back) : !(*go <= *back)) return false;
    }
  return true;
}

inline SnapshotSequence induced(const SnapshotSequence& s, const std::vector<bool>& keep) {
  SnapshotSequence out{s.nodes, {}};
  for (const auto& snap : s.snapshots) {
    EdgeSet es;
    for (auto e : snap)
      if (keep[e.u] && keep[e.v]) es.push_back(e);
    out.snapshots.push_back(std::move(es));
  }
  return out;
}

/// Inclusion-maximal subsets S of `focus` that are temporally connected using
/// journeys confined to S plus the non-focus vertices (all vertices when no
/// focus is given, i.e. closed components).
inline std::vector<std::vector<Vertex>> maximal_temporal_components(const SnapshotSequence& s, Kind kind,
                                                                    std::vector<Vertex> focus = {},
                                                                    std::size_t limit_n = 15) {
  auto n = s.n();
  if (focus.empty())
    for (Vertex v = 0; v < n; ++v) focus.push_back(v);
  auto k = focus.size();
  if (k > limit_n) throw contract_error("component enumeration limited to " + std::to_string(limit_n) + " vertices");
  std::vector<bool> in_focus(n, false);
  for (auto v : focus) in_focus[v] = true;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << k); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](auto x, auto y) { return std::popcount(x) > std::popcount(y); });
  std::vector<std::uint32_t> found;
  for (auto m : masks) {
    bool covered = false;
    for (auto f : found)
      if ((m & f) == m) {
        covered = true;
        break;
      }
    if (covered) continue;
    std::vector<bool> keep(n);
    for (Vertex v = 0; v < n; ++v) keep[v] = !in_focus[v];
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1) keep[focus[i]] = true;
    auto c = closure(induced(s, keep), kind);
    bool tc = true;
    for (std::size_t i = 0; i < k && tc; ++i)
      for (std::size_t j = 0; j < k && tc; ++j)
        if ((m >> i & 1) && (m >> j & 1) && !c.has(focus[i], focus[j])) tc = false;
    if (tc) found.push_back(m);
  }
  std::vector<std::vector<Vertex>> out;
  for (auto m : found) {
    std::vector<Vertex> comp;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1) comp.push_back(focus[i]);
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Replaces each edge uv by helpers "u~v" and "v~u" with timed edges
/// (u, u~v)@1, (u~v, v)@2, (v, v~u)@1, (v~u, u)@2. Snapshot 0 is empty.
inline SnapshotSequence semaphore_transform(const StaticGraph& g) {
  Names ids = g.nodes;
  for (const auto& id : ids)
    if (id.find('~') != std::string::npos) throw input_error("node ids containing '~' clash with gadget helpers");
  for (auto e : g.edges) {
    ids.push_back(g.nodes[e.u] + "~" + g.nodes[e.v]);
    ids.push_back(g.nodes[e.v] + "~" + g.nodes[e.u]);
  }
  auto names = make_names(std::move(ids));
  std::vector<EdgeSet> snaps(3);
  for (auto e : g.edges) {
    const auto& u = g.nodes[e.u];
    const auto& v = g.nodes[e.v];
    auto uh = u + "~" + v, vh = v + "~" + u;
    snaps[1].push_back(make_edge(names, u, uh));
    snaps[1].push_back(make_edge(names, v, vh));
    snaps[2].push_back(make_edge(names, uh, v));
    snaps[2].push_back(make_edge(names, vh, u));
  }
  return make_snapshots(std::move(names), std::move(snaps));
}

}  // namespace tvg
