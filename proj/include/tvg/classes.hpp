#pragma once

#include "tvg/closure.hpp"
#include "tvg/hierarchy.hpp"
#include "tvg/journeys.hpp"

#include <array>

namespace tvg {

enum class FiniteClass { J1A, JA1, TC, TCrt, E1A, K };

inline constexpr std::array<FiniteClass, 6> all_finite_classes{FiniteClass::J1A, FiniteClass::JA1, FiniteClass::TC,
                                                               FiniteClass::TCrt, FiniteClass::E1A, FiniteClass::K};

inline const char* class_name(FiniteClass c) {
  constexpr const char* names[] = {"J1A", "JA1", "TC", "TCrt", "E1A", "K"};
  return names[static_cast<int>(c)];
}

struct Membership {
  bool value = false;
  std::optional<Vertex> witness;  // source for J1A, sink for JA1, center for E1A
};

namespace detail {

inline std::optional<Vertex> dominating_vertex(const StaticGraph& g) {
  auto adj = g.adjacency();
  for (Vertex v = 0; v < g.n(); ++v)
    if (adj[v].size() + 1 == g.n()) return v;
  return std::nullopt;
}

}  // namespace detail

/// J1A: some node reaches all; JA1: some node reached by all; TC: every pair;
/// TCrt: every pair can go and come back within the lifetime; E1A: footprint
/// has a universal vertex; K: footprint complete. E1A and K ignore the kind.
inline Membership finite_class_membership(const SnapshotSequence& s, FiniteClass c, Kind kind) {
  auto n = s.n();
  if (n <= 1) return {true, n == 1 ? std::optional<Vertex>(0) : std::nullopt};
  switch (c) {
    case FiniteClass::E1A: {
      auto w = detail::dominating_vertex(footprint(s));
      return {w.has_value(), w};
    }
    case FiniteClass::K:
      return {footprint(s).edges.size() == n * (n - 1) / 2, std::nullopt};
    case FiniteClass::TCrt:
      return {roundtrip_complete(roundtrip_closure(s, 0, static_cast<std::int64_t>(s.length()), kind), kind), std::nullopt};
    default:
      break;
  }
  auto cl = closure(s, kind);
  if (c == FiniteClass::TC) return {cl.complete(), std::nullopt};
  for (Vertex w = 0; w < n; ++w) {
    bool ok = true;
    for (Vertex x = 0; x < n && ok; ++x) ok = c == FiniteClass::J1A ? cl.has(w, x) : cl.has(x, w);
    if (ok) return {true, w};
  }
  return {false, std::nullopt};
}

/// Smallest b such that every length-b window covers the footprint.
inline std::optional<std::size_t> bounded_realization_delta(const SnapshotSequence& s) {
  return extremal(footprint_realization(s)).value;
}

/// Smallest p < length with snapshot i equal to snapshot i+p wherever defined.
/// A period must fit twice in the trace.
inline std::optional<std::size_t> smallest_period(const SnapshotSequence& s) {
  auto d = s.length();
  for (std::size_t p = 1; 2 * p <= d; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < d && ok; ++i) ok = s.snapshots[i] == s.snapshots[i + p];
    if (ok) return p;
  }
  return std::nullopt;
}

enum class CoverVersion { temporal, evolving, permanent };

/// Isolated vertices are dominated only by membership.
inline bool dominates(std::size_t n, const EdgeSet& edges, const std::vector<Vertex>& set) {
  std::vector<bool> in(n, false), dom(n, false);
  for (auto v : set) {
    if (v >= n) throw input_error("dominating set names an unknown vertex");
    in[v] = dom[v] = true;
  }
  for (auto e : edges) {
    if (in[e.u]) dom[e.v] = true;
    if (in[e.v]) dom[e.u] = true;
  }
  return std::find(dom.begin(), dom.end(), false) == dom.end();
}

/// temporal: one set dominating the footprint; permanent: one set dominating
/// every snapshot; evolving: one set per snapshot dominating that snapshot.
inline bool verify_covering(const SnapshotSequence& s, CoverVersion version, const std::vector<std::vector<Vertex>>& solution) {
  auto n = s.n();
  if (version == CoverVersion::evolving) {
    if (solution.size() != s.length()) throw input_error("evolving solution needs one set per snapshot");
    for (std::size_t i = 0; i < s.length(); ++i)
      if (!dominates(n, s.snapshots[i], solution[i])) return false;
    return true;
  }
  if (solution.size() != 1) throw input_error("temporal and permanent solutions are a single set");
  if (version == CoverVersion::temporal) return dominates(n, footprint(s).edges, solution[0]);
  for (const auto& snap : s.snapshots)
    if (!dominates(n, snap, solution[0])) return false;
  return true;
}

inline bool is_mis(const StaticGraph& g, const std::vector<Vertex>& set) {
  std::vector<bool> in(g.n(), false);
  for (auto v : set) {
    if (v >= g.n()) throw input_error("set names an unknown vertex");
    in[v] = true;
  }
  for (auto e : g.edges)
    if (in[e.u] && in[e.v]) return false;
  return dominates(g.n(), g.edges, set);
}

/// S is an MIS of G and, for every v outside S, deleting all edges between v
/// and S disconnects G (otherwise that subgraph leaves v undominated).
inline bool is_robust_mis(const StaticGraph& g, const std::vector<Vertex>& set) {
  if (!is_connected(g)) throw input_error("robustness is defined on connected graphs");
  if (!is_mis(g, set)) return false;
  std::vector<bool> in(g.n(), false);
  for (auto v : set) in[v] = true;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (in[v]) continue;
    EdgeSet rest;
    for (auto e : g.edges)
      if (!((e.u == v && in[e.v]) || (e.v == v && in[e.u]))) rest.push_back(e);
    if (is_connected(g.n(), rest)) return false;
  }
  return true;
}

/// All maximal independent sets, each sorted, in lexicographic order.
inline std::vector<std::vector<Vertex>> all_mis(const StaticGraph& g, std::size_t limit_n = 20) {
  auto n = g.n();
  if (n > limit_n || n > 31) throw contract_error("MIS enumeration limited to n <= " + std::to_string(std::min<std::size_t>(limit_n, 31)));
  std::vector<std::uint32_t> nb(n, 0);
  for (auto e : g.edges) {
    nb[e.u] |= 1u << e.v;
    nb[e.v] |= 1u << e.u;
  }
  std::vector<std::vector<Vertex>> out;
  std::function<void(Vertex, std::uint32_t, std::uint32_t)> rec = [&](Vertex v, std::uint32_t chosen, std::uint32_t blocked) {
    if (v == n) {
      for (Vertex x = 0; x < n; ++x)
        if (!(chosen >> x & 1) && !(nb[x] & chosen)) return;
      std::vector<Vertex> s;
      for (Vertex x = 0; x < n; ++x)
        if (chosen >> x & 1) s.push_back(x);
      out.push_back(s);
      return;
    }
    if (!(blocked >> v & 1)) rec(v + 1, chosen | 1u << v, blocked | nb[v]);
    rec(v + 1, chosen, blocked);
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<std::vector<Vertex>> find_robust_mis(const StaticGraph& g, std::size_t limit_n = 20) {
  if (!is_connected(g)) throw input_error("robustness is defined on connected graphs");
  for (const auto& s : all_mis(g, limit_n))
    if (is_robust_mis(g, s)) return s;
  return std::nullopt;
}

struct ClassReport {
  std::array<Membership, 6> strict;
  std::array<Membership, 6> nonstrict;
  std::optional<std::size_t> delta;
  std::optional<std::size_t> period;
  std::optional<std::size_t> tinterval;
  std::optional<std::size_t> tdiam;
  std::optional<std::size_t> rtdiam;
  std::optional<Time> alpha;

  const Membership& get(FiniteClass c, Kind k = Kind::strict) const {
    return (k == Kind::strict ? strict : nonstrict)[static_cast<int>(c)];
  }
};

/// Finite-class flags (both kinds) and finite-trace parameters; parameters
/// that depend on the kind use strict journeys.
inline ClassReport classify(const SnapshotSequence& s) {
  ClassReport r;
  for (auto c : all_finite_classes) {
    r.strict[static_cast<int>(c)] = finite_class_membership(s, c, Kind::strict);
    r.nonstrict[static_cast<int>(c)] = finite_class_membership(s, c, Kind::nonstrict);
  }
  r.delta = bounded_realization_delta(s);
  r.period = smallest_period(s);
  r.tinterval = extremal(tinterval(s)).value;
  r.tdiam = extremal(tdiameter(s)).value;
  r.rtdiam = extremal(rt_tdiameter(s)).value;
  r.alpha = steady_progress_alpha(presence(s), {Time(0), Time(static_cast<std::int64_t>(s.length()))}, Kind::strict);
  return r;
}

inline ClassReport classify(const TemporalGraph& g) { return classify(to_snapshots(g)); }

}  // namespace tvg
