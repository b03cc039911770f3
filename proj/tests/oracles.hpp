#pragma once

// Brute-force reference implementations used by the unit and acceptance tests.

#include "tvg/tvg.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace tvg;

/// Earliest hop index reaching each node from src when the first hop is at
/// index >= t0, by exhaustive search over (node, ready index) states.
inline std::vector<std::optional<std::int64_t>> discrete_arrival(const SnapshotSequence& s, Vertex src, std::int64_t t0, Kind kind,
                                                                 std::int64_t end = -1) {
  auto n = s.n();
  auto d = end < 0 ? static_cast<std::int64_t>(s.length()) : end;
  std::vector<std::optional<std::int64_t>> arr(n);
  std::set<std::pair<Vertex, std::int64_t>> seen{{src, t0}};
  std::vector<std::pair<Vertex, std::int64_t>> stack{{src, t0}};
  while (!stack.empty()) {
    auto [v, ready] = stack.back();
    stack.pop_back();
    for (auto i = std::max<std::int64_t>(ready, 0); i < d; ++i)
      for (auto e : s.snapshots[static_cast<std::size_t>(i)]) {
        if (e.u != v && e.v != v) continue;
        auto w = e.other(v);
        if (!arr[w] || i < *arr[w]) arr[w] = i;
        std::pair next{w, kind == Kind::strict ? i + 1 : i};
        if (seen.insert(next).second) stack.push_back(next);
      }
  }
  return arr;
}

inline std::vector<std::vector<bool>> discrete_closure(const SnapshotSequence& s, Kind kind) {
  auto n = s.n();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (Vertex u = 0; u < n; ++u) {
    auto a = discrete_arrival(s, u, 0, kind);
    for (Vertex v = 0; v < n; ++v) r[u][v] = u == v || a[v].has_value();
  }
  return r;
}

/// Whether u can reach v and come back inside [start, end), the return
/// leaving after the outbound arrival (strict) or no earlier (non-strict).
inline bool discrete_roundtrip(const SnapshotSequence& s, Vertex u, Vertex v, std::int64_t start, std::int64_t end, Kind kind) {
  if (u == v) return true;
  using State = std::tuple<Vertex, std::int64_t, int>;
  std::set<State> seen{{u, start, 0}};
  std::vector<State> stack{{u, start, 0}};
  while (!stack.empty()) {
    auto [x, ready, phase] = stack.back();
    stack.pop_back();
    for (auto i = ready; i < end; ++i)
      for (auto e : s.snapshots[static_cast<std::size_t>(i)]) {
        if (e.u != x && e.v != x) continue;
        auto w = e.other(x);
        auto next_ready = kind == Kind::strict ? i + 1 : i;
        int next_phase = phase;
        if (phase == 0 && w == v) next_phase = 1;
        if (next_phase == 1 && w == u) return true;
        State st{w, next_ready, next_phase};
        if (seen.insert(st).second) stack.push_back(st);
      }
  }
  return false;
}

inline bool discrete_tc(const SnapshotSequence& s, std::int64_t start, std::int64_t end, Kind kind) {
  for (Vertex u = 0; u < s.n(); ++u) {
    auto a = discrete_arrival(s, u, start, kind, end);
    for (Vertex v = 0; v < s.n(); ++v)
      if (u != v && !a[v]) return false;
  }
  return true;
}

inline bool discrete_tcrt(const SnapshotSequence& s, std::int64_t start, std::int64_t end, Kind kind) {
  for (Vertex u = 0; u < s.n(); ++u)
    for (Vertex v = 0; v < s.n(); ++v)
      if (!discrete_roundtrip(s, u, v, start, end, kind)) return false;
  return true;
}

/// Earliest arrival over simple paths, each hop at the earliest feasible time.
inline std::vector<std::optional<Time>> continuous_arrival(const Presence& p, Vertex src, const Time& t0, Kind kind) {
  auto n = p.n();
  std::vector<std::optional<Time>> best(n);
  best[src] = t0;
  std::vector<bool> on(n, false);
  std::function<void(Vertex, Time)> dfs = [&](Vertex v, Time ready) {
    on[v] = true;
    for (std::size_t idx = 0; idx < p.edges.size(); ++idx) {
      auto e = p.edges[idx];
      if (e.u != v && e.v != v) continue;
      auto w = e.other(v);
      if (on[w]) continue;
      std::optional<Time> s;
      for (const auto& iv : p.intervals[idx]) {
        auto cand = std::max(ready, iv.start);
        if (cand + p.span() < iv.end && (!s || cand < *s)) s = cand;
      }
      if (!s) continue;
      auto a = p.arrive(*s);
      if (!best[w] || a < *best[w]) best[w] = a;
      dfs(w, p.avail(*s, kind));
    }
    on[v] = false;
  };
  dfs(src, t0);
  return best;
}

/// Every journey from u to v over simple paths, trying every hop time in
/// `times` that is feasible; returns the minimum duration.
inline std::optional<Time> fastest_duration(const Presence& p, Vertex u, Vertex v, const std::vector<Time>& times, Kind kind) {
  std::optional<Time> best;
  std::vector<bool> on(p.n(), false);
  std::function<void(Vertex, std::optional<Time>, Time, Time)> dfs = [&](Vertex x, std::optional<Time> dep, Time ready, Time) {
    on[x] = true;
    for (std::size_t idx = 0; idx < p.edges.size(); ++idx) {
      auto e = p.edges[idx];
      if (e.u != x && e.v != x) continue;
      auto w = e.other(x);
      if (on[w]) continue;
      for (const auto& s : times) {
        if (s < ready || !p.feasible(idx, s)) continue;
        auto d0 = dep ? *dep : s;
        auto a = p.arrive(s);
        if (w == v) {
          if (!best || a - d0 < *best) best = a - d0;
        } else {
          dfs(w, d0, p.avail(s, kind), a);
        }
      }
    }
    on[x] = false;
  };
  dfs(u, std::nullopt, p.lifetime.start, p.lifetime.start);
  return best;
}

/// Brute-force extremal window length for the four hierarchy parameters.
enum class Param { tinterval, footprint, tdiam, rtdiam };

inline bool window_passes(const SnapshotSequence& s, Param prm, std::size_t i, std::size_t L, Kind kind) {
  auto a = static_cast<std::int64_t>(i), b = static_cast<std::int64_t>(i + L);
  switch (prm) {
    case Param::tinterval: {
      auto es = s.snapshots[i];
      for (auto j = i + 1; j < i + L; ++j) es = set_intersection(es, s.snapshots[j]);
      return is_connected(s.n(), es);
    }
    case Param::footprint: {
      EdgeSet es;
      for (auto j = i; j < i + L; ++j) es = set_union(es, s.snapshots[j]);
      return es == footprint(s).edges;
    }
    case Param::tdiam:
      return discrete_tc(s, a, b, kind);
    case Param::rtdiam:
      return discrete_tcrt(s, a, b, kind);
  }
  return false;
}

inline std::optional<std::size_t> extremal(const SnapshotSequence& s, Param prm, Kind kind = Kind::strict) {
  auto d = s.length();
  auto all = [&](std::size_t L) {
    for (std::size_t i = 0; i + L <= d; ++i)
      if (!window_passes(s, prm, i, L, kind)) return false;
    return true;
  };
  if (prm == Param::tinterval) {
    for (auto L = d; L >= 1; --L)
      if (all(L)) return L;
    return std::nullopt;
  }
  for (std::size_t L = 1; L <= d; ++L)
    if (all(L)) return L;
  return std::nullopt;
}

/// Spanning trees of a graph on n <= 8 vertices, each as per-vertex neighbour
/// masks, by testing every (n-1)-edge subset for connectivity.
inline std::vector<std::vector<std::uint32_t>> spanning_trees(std::size_t n, const EdgeSet& edges) {
  std::vector<std::vector<std::uint32_t>> out;
  if (n <= 1) return {std::vector<std::uint32_t>(n, 0)};
  auto m = edges.size();
  std::vector<std::size_t> pick(n - 1);
  std::vector<std::uint32_t> nb(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n - 1) {
      std::fill(nb.begin(), nb.end(), 0);
      for (auto i : pick) {
        nb[edges[i].u] |= 1u << edges[i].v;
        nb[edges[i].v] |= 1u << edges[i].u;
      }
      std::uint32_t seen = 1, frontier = 1;
      while (frontier) {
        std::uint32_t next = 0;
        for (Vertex v = 0; v < n; ++v)
          if (frontier >> v & 1) next |= nb[v];
        frontier = next & ~seen;
        seen |= next;
      }
      if (seen == (1u << n) - 1) out.push_back(nb);
      return;
    }
    for (auto i = from; i + (n - 1 - pos) <= m; ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Robustness by definition: S dominates every connected spanning subgraph,
/// equivalently every spanning tree (each such subgraph contains one, and
/// domination is monotone under adding edges).
inline bool robust_by_trees(const std::vector<std::vector<std::uint32_t>>& trees, std::uint32_t set) {
  for (const auto& nb : trees)
    for (Vertex v = 0; v < nb.size(); ++v)
      if (!(set >> v & 1) && !(nb[v] & set)) return false;
  return true;
}

inline bool independent_maximal(std::size_t n, const EdgeSet& edges, std::uint32_t set) {
  for (auto e : edges)
    if ((set >> e.u & 1) && (set >> e.v & 1)) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (set >> v & 1) continue;
    bool dom = false;
    for (auto e : edges)
      if ((e.u == v && (set >> e.v & 1)) || (e.v == v && (set >> e.u & 1))) dom = true;
    if (!dom) return false;
  }
  return true;
}

/// Non-isomorphic simple graphs on n vertices (n <= 7) as edge sets, built by
/// vertex addition with canonical-form deduplication.
inline std::vector<EdgeSet> all_graphs(std::size_t n) {
  auto code = [](std::size_t k, const std::vector<std::uint32_t>& adj, const std::vector<int>& perm) {
    std::uint32_t c = 0;
    int bit = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j, ++bit)
        if (adj[static_cast<std::size_t>(perm[i])] >> perm[j] & 1) c |= 1u << bit;
    return c;
  };
  auto canon = [&](std::size_t k, const std::vector<std::uint32_t>& adj) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    auto best = code(k, adj, perm);
    while (std::next_permutation(perm.begin(), perm.end())) best = std::max(best, code(k, adj, perm));
    return best;
  };
  std::vector<std::vector<std::uint32_t>> level{{0}};
  for (std::size_t k = 2; k <= n; ++k) {
    std::set<std::uint32_t> codes;
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& g : level)
      for (std::uint32_t nb = 0; nb < (1u << (k - 1)); ++nb) {
        auto adj = g;
        adj.push_back(nb);
        for (std::size_t v = 0; v + 1 < k; ++v)
          if (nb >> v & 1) adj[v] |= 1u << (k - 1);
        if (codes.insert(canon(k, adj)).second) next.push_back(adj);
      }
    level = std::move(next);
  }
  std::vector<EdgeSet> out;
  for (const auto& adj : level) {
    EdgeSet es;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (adj[u] >> v & 1) es.emplace_back(u, v);
    out.push_back(es);
  }
  return out;
}

inline Names letters(std::size_t n) {
  Names ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  return ids;
}

/// Random snapshot sequence: each possible edge present with probability q.
template <class Rng>
SnapshotSequence random_trace(Rng& rng, std::size_t n, std::size_t d, double q) {
  std::bernoulli_distribution coin(q);
  std::vector<EdgeSet> snaps(d);
  for (auto& snap : snaps)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) snap.emplace_back(u, v);
  return make_snapshots(letters(n), std::move(snaps));
}

/// Weekly line: edge i (between the i-th and (i+1)-th letters) present on day
/// i+1 of every week, for the given number of weeks.
inline SnapshotSequence weekly_line(std::size_t weeks) {
  std::vector<EdgeSet> snaps(7 * weeks);
  for (std::size_t w = 0; w < weeks; ++w)
    for (Vertex i = 0; i < 5; ++i) snaps[7 * w + i + 1].push_back(Edge(i, i + 1));
  return make_snapshots(letters(6), std::move(snaps));
}

}  // namespace oracle
