#pragma once

#include "tvg/time.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tvg {

/// Vertices are indices into a graph's sorted node-name list.
using Vertex = std::uint32_t;

enum class Kind { strict, nonstrict };

inline const char* kind_name(Kind k) { return k == Kind::strict ? "strict" : "nonstrict"; }

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}
  Vertex other(Vertex x) const { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free edge list.
using EdgeSet = std::vector<Edge>;

inline void normalize(EdgeSet& es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
}

inline bool contains(const EdgeSet& es, Edge e) { return std::binary_search(es.begin(), es.end(), e); }

inline EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

using Names = std::vector<std::string>;

/// Sorts and validates a node list (non-empty ids, no duplicates).
inline Names make_names(Names ids) {
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].empty()) throw input_error("empty node id");
    if (i > 0 && ids[i] == ids[i - 1]) throw input_error("duplicate node id '" + ids[i] + "'");
  }
  return ids;
}

inline std::optional<Vertex> find_vertex(const Names& names, std::string_view id) {
  auto it = std::lower_bound(names.begin(), names.end(), id);
  if (it == names.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - names.begin());
}

inline Vertex vertex_of(const Names& names, std::string_view id) {
  if (auto v = find_vertex(names, id)) return *v;
  throw input_error("unknown node '" + std::string(id) + "'");
}

inline Edge make_edge(const Names& names, std::string_view a, std::string_view b) {
  if (a == b) throw input_error("self-loop on '" + std::string(a) + "'");
  return Edge(vertex_of(names, a), vertex_of(names, b));
}

struct StaticGraph {
  Names nodes;
  EdgeSet edges;

  std::size_t n() const { return nodes.size(); }
  bool has_edge(Vertex a, Vertex b) const { return a != b && contains(edges, Edge(a, b)); }
  std::vector<std::vector<Vertex>> adjacency() const {
    std::vector<std::vector<Vertex>> adj(n());
    for (auto e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    return adj;
  }
};

struct SnapshotSequence {
  Names nodes;
  std::vector<EdgeSet> snapshots;

  std::size_t n() const { return nodes.size(); }
  std::size_t length() const { return snapshots.size(); }
};

/// Half-open [start, end).
struct Interval {
  Time start{0};
  Time end{0};
  bool contains(const Time& t) const { return start <= t && t < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalGraph {
  Names nodes;
  std::map<Edge, std::vector<Interval>> edges;
  Time latency{0};
  /// Explicit lifetime; defaults to the hull of all presence intervals.
  std::optional<Interval> span;
  /// When set, discretization also cuts at span.start + k * grid.
  std::optional<Time> grid;

  std::size_t n() const { return nodes.size(); }
  Interval lifetime() const {
    if (span) return *span;
    std::optional<Interval> hull;
    for (const auto& [e, ivs] : edges) {
      for (const auto& iv : ivs) {
        if (!hull) hull = iv;
        hull->start = std::min(hull->start, iv.start);
        hull->end = std::max(hull->end, iv.end);
      }
    }
    return hull.value_or(Interval{});
  }
};

using TemporalGraph = std::variant<SnapshotSequence, IntervalGraph>;

inline bool is_discrete(const TemporalGraph& g) { return std::holds_alternative<SnapshotSequence>(g); }

inline const Names& nodes_of(const TemporalGraph& g) {
  return std::visit([](const auto& x) -> const Names& { return x.nodes; }, g);
}

inline const SnapshotSequence& as_snapshots(const TemporalGraph& g) {
  if (auto p = std::get_if<SnapshotSequence>(&g)) return *p;
  throw contract_error("operation requires a snapshot sequence");
}

/// Validates and normalizes snapshot edge sets.
inline SnapshotSequence make_snapshots(Names nodes, std::vector<EdgeSet> snaps) {
  if (snaps.empty()) throw input_error("snapshot sequence must have at least one snapshot");
  for (auto& s : snaps) {
    normalize(s);
    for (auto e : s) {
      if (e.u == e.v) throw input_error("self-loop in snapshot");
      if (e.v >= nodes.size()) throw input_error("edge endpoint outside node set");
    }
  }
  return SnapshotSequence{std::move(nodes), std::move(snaps)};
}

/// Sorts intervals and merges overlapping or touching ones.
inline std::vector<Interval> merge_intervals(std::vector<Interval> ivs) {
  for (const auto& iv : ivs)
    if (!(iv.start < iv.end)) throw input_error("empty presence interval [" + to_string(iv.start) + "," + to_string(iv.end) + ")");
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::vector<Interval> out;
  for (const auto& iv : ivs) {
    if (!out.empty() && iv.start <= out.back().end)
      out.back().end = std::max(out.back().end, iv.end);
    else
      out.push_back(iv);
  }
  return out;
}

inline IntervalGraph make_intervals(Names nodes, std::map<Edge, std::vector<Interval>> edges, Time latency) {
  if (latency < Time(0)) throw input_error("latency must be non-negative");
  IntervalGraph g{std::move(nodes), {}, latency, std::nullopt, std::nullopt};
  for (auto& [e, ivs] : edges) {
    if (e.u == e.v) throw input_error("self-loop in interval graph");
    if (e.v >= g.nodes.size()) throw input_error("edge endpoint outside node set");
    auto merged = merge_intervals(std::move(ivs));
    if (!merged.empty()) g.edges.emplace(e, std::move(merged));
  }
  return g;
}

/// Connected-component label per vertex (labels are 0..c-1 in order of smallest member).
inline std::vector<Vertex> component_labels(std::size_t n, const EdgeSet& edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto e : edges) {
    auto a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Vertex> label(n), ids(n, static_cast<Vertex>(-1));
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto r = find(v);
    if (ids[r] == static_cast<Vertex>(-1)) ids[r] = next++;
    label[v] = ids[r];
  }
  return label;
}

inline std::size_t component_count(std::size_t n, const EdgeSet& edges) {
  auto l = component_labels(n, edges);
  return n == 0 ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

inline bool is_connected(std::size_t n, const EdgeSet& edges) { return component_count(n, edges) <= 1; }

inline bool is_connected(const StaticGraph& g) { return is_connected(g.n(), g.edges); }

/// Replaces each connected component by a clique.
inline EdgeSet component_cliques(std::size_t n, const EdgeSet& edges) {
  auto label = component_labels(n, edges);
  EdgeSet out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (label[a] == label[b]) out.emplace_back(a, b);
  return out;
}

inline StaticGraph footprint(const TemporalGraph& g) {
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    EdgeSet all;
    for (const auto& snap : s->snapshots) all.insert(all.end(), snap.begin(), snap.end());
    normalize(all);
    return {s->nodes, all};
  }
  const auto& ig = std::get<IntervalGraph>(g);
  EdgeSet all;
  for (const auto& [e, ivs] : ig.edges) all.push_back(e);
  return {ig.nodes, all};
}

inline StaticGraph intersection_graph(const TemporalGraph& g) {
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    EdgeSet acc = s->snapshots.front();
    for (const auto& snap : s->snapshots) acc = set_intersection(acc, snap);
    return {s->nodes, acc};
  }
  const auto& ig = std::get<IntervalGraph>(g);
  auto life = ig.lifetime();
  EdgeSet acc;
  for (const auto& [e, ivs] : ig.edges)
    for (const auto& iv : ivs)
      if (iv.start <= life.start && life.end <= iv.end) acc.push_back(e);
  return {ig.nodes, acc};
}

/// Snapshot at t. Discrete traces accept integral 0 <= t < length; continuous
/// traces accept any t in the closed lifetime.
inline StaticGraph snapshot_at(const TemporalGraph& g, const Time& t) {
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    if (!is_integral(t) || t < Time(0) || t >= Time(static_cast<std::int64_t>(s->length())))
      throw range_error("snapshot index " + to_string(t) + " outside [0," + std::to_string(s->length()) + ")");
    return {s->nodes, s->snapshots[static_cast<std::size_t>(t.numerator())]};
  }
  const auto& ig = std::get<IntervalGraph>(g);
  auto life = ig.lifetime();
  if (t < life.start || t > life.end)
    throw range_error("time " + to_string(t) + " outside lifetime [" + to_string(life.start) + "," + to_string(life.end) + "]");
  EdgeSet es;
  for (const auto& [e, ivs] : ig.edges)
    for (const auto& iv : ivs)
      if (iv.contains(t)) es.push_back(e);
  return {ig.nodes, es};
}

/// Restriction to [w.start, w.end). Discrete slices are re-indexed from 0.
inline TemporalGraph temporal_subgraph(const TemporalGraph& g, const Interval& w) {
  if (!(w.start < w.end)) throw range_error("empty window");
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    if (!is_integral(w.start) || !is_integral(w.end)) throw range_error("discrete window needs integral bounds");
    auto lo = std::max<std::int64_t>(0, w.start.numerator());
    auto hi = std::min<std::int64_t>(static_cast<std::int64_t>(s->length()), w.end.numerator());
    if (lo >= hi) throw range_error("window outside the sequence");
    return SnapshotSequence{s->nodes, {s->snapshots.begin() + lo, s->snapshots.begin() + hi}};
  }
  const auto& ig = std::get<IntervalGraph>(g);
  IntervalGraph out{ig.nodes, {}, ig.latency, w, ig.grid};
  for (const auto& [e, ivs] : ig.edges) {
    std::vector<Interval> clipped;
    for (const auto& iv : ivs) {
      Interval c{std::max(iv.start, w.start), std::min(iv.end, w.end)};
      if (c.start < c.end) clipped.push_back(c);
    }
    if (!clipped.empty()) out.edges.emplace(e, std::move(clipped));
  }
  return out;
}

/// Sorted distinct interval endpoints.
inline std::vector<Time> characteristic_dates(const IntervalGraph& g) {
  std::vector<Time> d;
  for (const auto& [e, ivs] : g.edges)
    for (const auto& iv : ivs) {
      d.push_back(iv.start);
      d.push_back(iv.end);
    }
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

struct Discretized {
  SnapshotSequence seq;
  std::vector<Interval> slots;  // slot i is the time range of snapshot i
};

/// One snapshot per elementary interval between consecutive cut points
/// (characteristic dates, lifetime bounds, and grid points when a grid is set).
inline Discretized discretize(const IntervalGraph& g) {
  auto cuts = characteristic_dates(g);
  auto life = g.lifetime();
  cuts.push_back(life.start);
  cuts.push_back(life.end);
  if (g.grid) {
    if (*g.grid <= Time(0)) throw input_error("grid step must be positive");
    for (Time t = life.start; t < life.end; t += *g.grid) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](const Time& t) { return t < life.start || t > life.end; }),
             cuts.end());
  Discretized out;
  out.seq.nodes = g.nodes;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Interval slot{cuts[i], cuts[i + 1]};
    EdgeSet es;
    for (const auto& [e, ivs] : g.edges)
      for (const auto& iv : ivs)
        if (iv.start <= slot.start && slot.end <= iv.end) es.push_back(e);
    out.seq.snapshots.push_back(std::move(es));
    out.slots.push_back(slot);
  }
  if (out.seq.snapshots.empty()) {
    out.seq.snapshots.emplace_back();
    out.slots.push_back(life);
  }
  return out;
}

/// Snapshot i becomes presence [i, i+1); consecutive presences merge.
inline IntervalGraph to_intervals(const SnapshotSequence& s) {
  std::map<Edge, std::vector<Interval>> edges;
  for (std::size_t i = 0; i < s.length(); ++i)
    for (auto e : s.snapshots[i]) {
      Time t(static_cast<std::int64_t>(i));
      edges[e].push_back({t, t + 1});
    }
  auto g = make_intervals(s.nodes, std::move(edges), Time(0));
  g.span = Interval{Time(0), Time(static_cast<std::int64_t>(s.length()))};
  g.grid = Time(1);
  return g;
}

struct TraceStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t mu = 0;
  std::size_t k = 0;
  Time lifetime_min{0};
  Time lifetime_max{0};
};

inline TraceStats stats(const TemporalGraph& g) {
  TraceStats st;
  st.n = nodes_of(g).size();
  st.m = footprint(g).edges.size();
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    for (const auto& snap : s->snapshots) st.mu = std::max(st.mu, snap.size());
    st.k = s->length();
    st.lifetime_max = Time(static_cast<std::int64_t>(s->length()) - 1);
    return st;
  }
  const auto& ig = std::get<IntervalGraph>(g);
  auto d = discretize(ig);
  for (const auto& snap : d.seq.snapshots) st.mu = std::max(st.mu, snap.size());
  st.k = characteristic_dates(ig).size();
  auto life = ig.lifetime();
  st.lifetime_min = life.start;
  st.lifetime_max = life.end;
  return st;
}

/// Snapshot sequence view of any trace (continuous traces are discretized).
inline SnapshotSequence to_snapshots(const TemporalGraph& g) {
  if (auto s = std::get_if<SnapshotSequence>(&g)) return *s;
  return discretize(std::get<IntervalGraph>(g)).seq;
}

/// Concatenates `copies` periods of a trace whose period is its lifetime.
inline TemporalGraph unroll(const TemporalGraph& g, std::size_t copies) {
  if (copies == 0) throw range_error("unroll needs at least one period");
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    SnapshotSequence out{s->nodes, {}};
    for (std::size_t c = 0; c < copies; ++c) out.snapshots.insert(out.snapshots.end(), s->snapshots.begin(), s->snapshots.end());
    return out;
  }
  const auto& ig = std::get<IntervalGraph>(g);
  auto life = ig.lifetime();
  auto period = life.end - life.start;
  std::map<Edge, std::vector<Interval>> edges;
  for (const auto& [e, ivs] : ig.edges)
    for (std::size_t c = 0; c < copies; ++c) {
      Time shift = period * static_cast<std::int64_t>(c);
      for (const auto& iv : ivs) edges[e].push_back({iv.start + shift, iv.end + shift});
    }
  auto out = make_intervals(ig.nodes, std::move(edges), ig.latency);
  out.span = Interval{life.start, life.start + period * static_cast<std::int64_t>(copies)};
  out.grid = ig.grid;
  return out;
}

}  // namespace tvg
