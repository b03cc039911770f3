#pragma once

#include "tvg/core.hpp"

#include <bit>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

namespace tvg {

/// Per-edge presence as merged half-open intervals, shared by both
/// representations. A discrete snapshot i is the unit interval [i, i+1) with
/// zero hop span; a continuous hop spans the latency.
///
/// A hop at s over an edge present on [a, e) is feasible iff a <= s and
/// s + span < e. Discrete hop times are always integral.
struct Presence {
  Names nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<Interval>> intervals;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj;  // (neighbor, edge index)
  bool discrete = true;
  Time latency{0};
  Interval lifetime;

  std::size_t n() const { return nodes.size(); }
  Time span() const { return discrete ? Time(0) : latency; }
  /// Arrival time reported for a hop taken at s.
  Time arrive(const Time& s) const { return s + span(); }
  /// Earliest time the next hop may be taken after a hop at s.
  Time avail(const Time& s, Kind k) const {
    if (k == Kind::nonstrict) return s;
    return discrete ? s + 1 : s + latency;
  }
  /// Earliest feasible hop time >= tau on edge idx.
  std::optional<Time> next_hop(std::size_t idx, const Time& tau) const {
    const auto& ivs = intervals[idx];
    auto sp = span();
    auto it = std::partition_point(ivs.begin(), ivs.end(), [&](const Interval& iv) { return iv.end - sp <= tau; });
    for (; it != ivs.end(); ++it) {
      auto s = std::max(tau, it->start);
      if (s + sp < it->end) return s;
    }
    return std::nullopt;
  }
  bool feasible(std::size_t idx, const Time& s) const {
    if (discrete && !is_integral(s)) return false;
    for (const auto& iv : intervals[idx])
      if (iv.start <= s && s + span() < iv.end) return true;
    return false;
  }
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    if (a == b) return std::nullopt;
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge(a, b));
    if (it == edges.end() || *it != Edge(a, b)) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }
};

inline Presence presence(const TemporalGraph& g) {
  Presence p;
  std::map<Edge, std::vector<Interval>> m;
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    p.nodes = s->nodes;
    for (std::size_t i = 0; i < s->length(); ++i)
      for (auto e : s->snapshots[i]) {
        Time t(static_cast<std::int64_t>(i));
        m[e].push_back({t, t + 1});
      }
    for (auto& [e, ivs] : m) ivs = merge_intervals(std::move(ivs));
    p.discrete = true;
    p.lifetime = {Time(0), Time(static_cast<std::int64_t>(s->length()))};
  } else {
    const auto& ig = std::get<IntervalGraph>(g);
    p.nodes = ig.nodes;
    m = ig.edges;
    p.discrete = false;
    p.latency = ig.latency;
    p.lifetime = ig.lifetime();
  }
  p.adj.resize(p.nodes.size());
  for (auto& [e, ivs] : m) {
    auto idx = p.edges.size();
    p.edges.push_back(e);
    p.intervals.push_back(std::move(ivs));
    p.adj[e.u].push_back({e.v, idx});
    p.adj[e.v].push_back({e.u, idx});
  }
  return p;
}

struct Hop {
  Vertex from = 0;
  Vertex to = 0;
  Time t{0};
  friend bool operator==(const Hop&, const Hop&) = default;
};

struct Journey {
  std::vector<Hop> hops;
  Kind kind = Kind::strict;
};

struct JourneyInfo {
  Time departure{0};
  Time arrival{0};
  std::size_t hop_count = 0;
  Time duration{0};
  Time max_wait{0};
};

/// Departure, arrival, duration and largest idle time (next hop minus the
/// earliest time it could have been taken).
inline JourneyInfo summarize(const Presence& p, const Journey& j) {
  JourneyInfo info;
  if (j.hops.empty()) return info;
  info.departure = j.hops.front().t;
  info.arrival = p.arrive(j.hops.back().t);
  info.hop_count = j.hops.size();
  info.duration = info.arrival - info.departure;
  for (std::size_t i = 0; i + 1 < j.hops.size(); ++i)
    info.max_wait = std::max(info.max_wait, j.hops[i + 1].t - p.avail(j.hops[i].t, j.kind));
  return info;
}

/// True iff the hops form a walk, respect the kind's time ordering, and each
/// hop is feasible. Hops over edges absent from the footprint are input errors.
inline bool validate_journey(const Presence& p, const Journey& j) {
  for (std::size_t i = 0; i < j.hops.size(); ++i) {
    const auto& h = j.hops[i];
    if (h.from >= p.n() || h.to >= p.n()) throw input_error("journey hop names an unknown node");
    auto idx = p.edge_index(h.from, h.to);
    if (!idx) throw input_error("journey hop over an edge that never exists: " + p.nodes[h.from] + "-" + p.nodes[h.to]);
    if (!p.feasible(*idx, h.t)) return false;
    if (i > 0) {
      const auto& prev = j.hops[i - 1];
      if (prev.to != h.from) return false;
      if (h.t < p.avail(prev.t, j.kind)) return false;
    }
  }
  return true;
}

inline bool validate_journey(const TemporalGraph& g, const Journey& j) { return validate_journey(presence(g), j); }

struct ReachabilityTable {
  Vertex source = 0;
  Time start{0};
  Kind kind = Kind::strict;
  std::vector<std::optional<Time>> arrival;
  std::vector<std::optional<Time>> ready;  // earliest time a further hop may leave the node
  std::vector<std::optional<Hop>> parent;  // hop that reached the node
  std::vector<std::size_t> hops;
};

/// Label-setting earliest arrival over journeys whose first hop is >= t0.
/// Ties broken by fewer hops, then smaller parent vertex. `allowed`, when
/// given, restricts intermediate and final vertices.
inline ReachabilityTable earliest_arrival(const Presence& p, Vertex src, const Time& t0, Kind kind,
                                          const std::vector<bool>* allowed = nullptr) {
  auto n = p.n();
  ReachabilityTable r;
  r.source = src;
  r.start = t0;
  r.kind = kind;
  r.arrival.assign(n, std::nullopt);
  r.ready.assign(n, std::nullopt);
  r.parent.assign(n, std::nullopt);
  r.hops.assign(n, 0);
  using Key = std::tuple<Time, std::size_t, Vertex>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> pq;
  std::vector<bool> done(n, false);
  r.arrival[src] = t0;
  r.ready[src] = t0;
  pq.push({t0, 0, src});
  while (!pq.empty()) {
    auto [tau, h, x] = pq.top();
    pq.pop();
    if (done[x] || *r.ready[x] != tau || r.hops[x] != h) continue;
    done[x] = true;
    for (auto [y, idx] : p.adj[x]) {
      if (done[y] || (allowed && !(*allowed)[y])) continue;
      auto s = p.next_hop(idx, tau);
      if (!s) continue;
      auto rd = p.avail(*s, kind);
      bool better = !r.ready[y] || rd < *r.ready[y] ||
                    (rd == *r.ready[y] && (h + 1 < r.hops[y] || (h + 1 == r.hops[y] && x < r.parent[y]->from)));
      if (!better) continue;
      r.ready[y] = rd;
      r.arrival[y] = p.arrive(*s);
      r.hops[y] = h + 1;
      r.parent[y] = Hop{x, y, *s};
      pq.push({rd, h + 1, y});
    }
  }
  return r;
}

inline ReachabilityTable earliest_arrival(const TemporalGraph& g, Vertex src, const Time& t0, Kind kind) {
  auto p = presence(g);
  if (src >= p.n()) throw input_error("unknown source vertex");
  if (t0 < p.lifetime.start || t0 > p.lifetime.end)
    throw range_error("start time " + to_string(t0) + " outside lifetime");
  return earliest_arrival(p, src, t0, kind);
}

/// Journey realizing the table's arrival at v (empty for the source).
inline std::optional<Journey> journey_to(const ReachabilityTable& r, Vertex v) {
  if (!r.arrival[v]) return std::nullopt;
  Journey j;
  j.kind = r.kind;
  for (Vertex x = v; x != r.source; x = r.parent[x]->from) j.hops.push_back(*r.parent[x]);
  std::reverse(j.hops.begin(), j.hops.end());
  return j;
}

/// Upper bound on a time: `attained` distinguishes s <= value from s < value.
struct Bound {
  Time value{0};
  bool attained = true;
  friend bool operator==(const Bound&, const Bound&) = default;
  friend bool operator<(const Bound& a, const Bound& b) {
    return a.value < b.value || (a.value == b.value && !a.attained && b.attained);
  }
};

namespace detail {

inline Bound tighten(const Bound& a, const Bound& b) { return b < a ? b : a; }

/// Latest feasible hop time on edge idx under upper bound c.
inline std::optional<Bound> latest_hop(const Presence& p, std::size_t idx, Bound c) {
  auto sp = p.span();
  if (p.discrete && !c.attained) c = {c.value - 1, true};
  if (p.discrete) c.value = Time(floor_int(c.value));
  std::optional<Bound> best;
  for (const auto& iv : p.intervals[idx]) {
    Bound ub{iv.end - sp, false};
    if (p.discrete) ub = {iv.end - 1, true};
    auto u = tighten(c, ub);
    bool ok = u.attained ? iv.start <= u.value : iv.start < u.value;
    if (ok && (!best || *best < u)) best = u;
  }
  return best;
}

}  // namespace detail

/// Latest departure from u of a journey reaching v with arrival <= t (the
/// temporal view v has of u at t). The bound may be a supremum that no
/// journey attains when presence ends exactly at the limit.
inline std::optional<Bound> latest_departure(const Presence& p, Vertex u, Vertex v, const Time& t, Kind kind) {
  if (u == v) return Bound{t, true};
  auto n = p.n();
  std::vector<std::optional<Bound>> best(n);
  std::vector<bool> done(n, false);
  auto cmp = [](const std::pair<Bound, Vertex>& a, const std::pair<Bound, Vertex>& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<std::pair<Bound, Vertex>, std::vector<std::pair<Bound, Vertex>>, decltype(cmp)> pq(cmp);
  done[v] = true;
  for (auto [x, idx] : p.adj[v]) {
    auto b = detail::latest_hop(p, idx, Bound{t - p.span(), true});
    if (b && (!best[x] || *best[x] < *b)) {
      best[x] = b;
      pq.push({*b, x});
    }
  }
  Time shift = kind == Kind::nonstrict ? Time(0) : (p.discrete ? Time(1) : p.latency);
  while (!pq.empty()) {
    auto [b, x] = pq.top();
    pq.pop();
    if (done[x] || !(*best[x] == b)) continue;
    done[x] = true;
    if (x == u) return b;
    for (auto [w, idx] : p.adj[x]) {
      if (done[w]) continue;
      auto c = detail::latest_hop(p, idx, Bound{b.value - shift, b.attained});
      if (c && (!best[w] || *best[w] < *c)) {
        best[w] = c;
        pq.push({*c, w});
      }
    }
  }
  return best[u];
}

/// Temporal distance from u at time t to every node (nullopt = unreachable).
/// Discrete traces count journeys whose first hop comes after t, so the
/// distance is the number of steps elapsed; continuous traces start at t.
inline std::vector<std::optional<Time>> temporal_distance(const Presence& p, Vertex u, const Time& t, Kind kind) {
  auto r = earliest_arrival(p, u, p.discrete ? t + 1 : t, kind);
  std::vector<std::optional<Time>> d(p.n());
  for (Vertex v = 0; v < p.n(); ++v)
    if (r.arrival[v]) d[v] = v == u ? Time(0) : *r.arrival[v] - t;
  return d;
}

inline std::optional<Time> eccentricity(const Presence& p, Vertex u, const Time& t, Kind kind) {
  Time worst(0);
  for (const auto& d : temporal_distance(p, u, t, kind)) {
    if (!d) return std::nullopt;
    worst = std::max(worst, *d);
  }
  return worst;
}

inline std::optional<Time> temporal_diameter_at(const Presence& p, const Time& t, Kind kind) {
  Time worst(0);
  for (Vertex u = 0; u < p.n(); ++u) {
    auto e = eccentricity(p, u, t, kind);
    if (!e) return std::nullopt;
    worst = std::max(worst, *e);
  }
  return worst;
}

/// Fewest-hop journey u -> v with first hop >= t0; among those, earliest arrival.
inline std::optional<Journey> shortest_journey(const Presence& p, Vertex u, Vertex v, const Time& t0, Kind kind) {
  if (u == v) return Journey{{}, kind};
  auto n = p.n();
  // layer[k][x]: earliest readiness at x using at most k hops
  std::vector<std::vector<std::optional<Time>>> ready(1, std::vector<std::optional<Time>>(n));
  std::vector<std::vector<std::optional<Hop>>> via(1, std::vector<std::optional<Hop>>(n));
  ready[0][u] = t0;
  for (std::size_t k = 1; k < std::max<std::size_t>(n, 2); ++k) {
    auto cur = ready[k - 1];
    std::vector<std::optional<Hop>> par(n);
    for (Vertex x = 0; x < n; ++x) {
      if (!ready[k - 1][x]) continue;
      for (auto [y, idx] : p.adj[x]) {
        auto s = p.next_hop(idx, *ready[k - 1][x]);
        if (!s) continue;
        auto rd = p.avail(*s, kind);
        if (!cur[y] || rd < *cur[y]) {
          cur[y] = rd;
          par[y] = Hop{x, y, *s};
        }
      }
    }
    ready.push_back(cur);
    via.push_back(par);
    if (cur[v]) {
      Journey j{{}, kind};
      Vertex x = v;
      for (std::size_t level = k; x != u; --level) {
        // walk back to the layer where x's label was set
        while (!via[level][x]) --level;
        j.hops.push_back(*via[level][x]);
        x = via[level][x]->from;
      }
      std::reverse(j.hops.begin(), j.hops.end());
      return j;
    }
  }
  return std::nullopt;
}

namespace detail {

/// Start times at which earliest-arrival structure can change: every
/// characteristic date shifted by up to n+1 latencies, plus midpoints.
inline std::vector<Time> candidate_starts(const Presence& p, const Interval& window) {
  std::vector<Time> c{window.start};
  if (p.discrete) {
    for (auto t = ceil_int(window.start); Time(t) < window.end; ++t) c.push_back(Time(t));
  } else {
    std::vector<Time> dates;
    for (const auto& ivs : p.intervals)
      for (const auto& iv : ivs) {
        dates.push_back(iv.start);
        dates.push_back(iv.end);
      }
    auto reach = static_cast<std::int64_t>(p.n()) + 1;
    for (const auto& d : dates)
      for (std::int64_t m = -reach; m <= reach; ++m) {
        auto t = d + p.latency * m;
        if (window.start <= t && t < window.end) c.push_back(t);
        if (p.latency == Time(0)) break;
      }
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (!p.discrete) {
    auto k = c.size();
    for (std::size_t i = 0; i + 1 < k; ++i) c.push_back((c[i] + c[i + 1]) / 2);
    std::sort(c.begin(), c.end());
  }
  return c;
}

}  // namespace detail

/// Minimum-duration journey u -> v departing within the window; ties go to
/// the earlier departure. Only attained durations are considered.
inline std::optional<Journey> fastest_journey(const Presence& p, Vertex u, Vertex v, const Interval& window, Kind kind) {
  if (u == v) return Journey{{}, kind};
  std::optional<Journey> best;
  std::optional<JourneyInfo> best_info;
  for (const auto& tau : detail::candidate_starts(p, window)) {
    auto r = earliest_arrival(p, u, tau, kind);
    if (!r.arrival[v]) continue;
    auto ld = latest_departure(p, u, v, *r.arrival[v], kind);
    if (!ld || !ld->attained || ld->value >= window.end) continue;
    auto late = earliest_arrival(p, u, ld->value, kind);
    auto j = journey_to(late, v);
    if (!j) continue;
    auto info = summarize(p, *j);
    if (!best_info || info.duration < best_info->duration ||
        (info.duration == best_info->duration && info.departure < best_info->departure)) {
      best = j;
      best_info = info;
    }
  }
  return best;
}

/// Foremost tree (parent vertex per node) as a function of the start time:
/// maximal right-open pieces of `range` on which the tree is constant.
struct TreePiece {
  Interval range;
  std::vector<std::optional<Vertex>> parent;
};

inline std::vector<TreePiece> foremost_tree_sweep(const Presence& p, Vertex src, const Interval& range, Kind kind) {
  auto cands = detail::candidate_starts(p, range);
  std::vector<TreePiece> pieces;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto r = earliest_arrival(p, src, cands[i], kind);
    std::vector<std::optional<Vertex>> par(p.n());
    for (Vertex v = 0; v < p.n(); ++v)
      if (r.parent[v]) par[v] = r.parent[v]->from;
    Time hi = i + 1 < cands.size() ? cands[i + 1] : range.end;
    if (!pieces.empty() && pieces.back().parent == par)
      pieces.back().range.end = hi;
    else
      pieces.push_back({{cands[i], hi}, par});
  }
  return pieces;
}

/// Smallest alpha such that every ordered pair has a journey inside the
/// window whose initial wait (from the window start) and every inter-hop wait
/// are <= alpha. Discrete traces only.
inline std::optional<Time> steady_progress_alpha(const Presence& p, const Interval& window, Kind kind) {
  if (!p.discrete) throw contract_error("steady progress is defined on discrete traces");
  auto lo = std::max<std::int64_t>(0, ceil_int(window.start));
  auto hi = std::min(floor_int(p.lifetime.end), ceil_int(window.end));
  auto n = p.n();
  if (hi <= lo) return n <= 1 ? std::optional<Time>(Time(0)) : std::nullopt;
  auto width = static_cast<std::size_t>(hi - lo);
  auto all_pairs = [&](std::int64_t alpha) {
    for (Vertex u = 0; u < n; ++u) {
      // states: (vertex, ready time offset from lo), ready in [0, width]
      std::vector<std::vector<bool>> seen(n, std::vector<bool>(width + 1, false));
      std::vector<bool> hit(n, false);
      std::vector<std::pair<Vertex, std::int64_t>> stack{{u, lo}};
      seen[u][0] = true;
      hit[u] = true;
      while (!stack.empty()) {
        auto [x, rd] = stack.back();
        stack.pop_back();
        for (auto [y, idx] : p.adj[x]) {
          for (auto s = rd; s < hi && s - rd <= alpha; ++s) {
            if (!p.feasible(idx, Time(s))) continue;
            hit[y] = true;
            auto nr = kind == Kind::strict ? s + 1 : s;
            auto off = static_cast<std::size_t>(nr - lo);
            if (off <= width && !seen[y][off]) {
              seen[y][off] = true;
              stack.push_back({y, nr});
            }
          }
        }
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
    }
    return true;
  };
  if (!all_pairs(static_cast<std::int64_t>(width))) return std::nullopt;
  std::int64_t a = -1, b = static_cast<std::int64_t>(width);  // fails at a, passes at b
  while (b - a > 1) {
    auto mid = (a + b) / 2;
    (all_pairs(mid) ? b : a) = mid;
  }
  return Time(b);
}

struct DisjointResult {
  std::size_t max_disjoint = 0;
  std::optional<std::size_t> min_separator;  // nullopt when s and t share a usable edge
};

/// Internally node-disjoint journeys and temporal node separators by
/// exhaustive search over internal node subsets.
inline DisjointResult disjoint_journeys(const Presence& p, Vertex s, Vertex t, Kind kind, std::size_t limit_n = 12) {
  auto n = p.n();
  if (n > limit_n) throw contract_error("disjoint-journey search limited to n <= " + std::to_string(limit_n));
  if (s == t) throw input_error("source and target must differ");
  std::vector<Vertex> internal;
  for (Vertex v = 0; v < n; ++v)
    if (v != s && v != t) internal.push_back(v);
  auto k = internal.size();
  auto full = std::size_t{1} << k;
  auto feasible_in = [&](const Presence& q) {
    std::vector<bool> f(full);
    for (std::size_t mask = 0; mask < full; ++mask) {
      std::vector<bool> allowed(n, false);
      allowed[t] = true;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) allowed[internal[i]] = true;
      f[mask] = earliest_arrival(q, s, q.lifetime.start, kind, &allowed).arrival[t].has_value();
    }
    return f;
  };
  auto feasible = feasible_in(p);
  DisjointResult res;
  bool direct = feasible[0];
  if (!direct) {
    std::size_t bestsep = k;
    for (std::size_t removed = 0; removed < full; ++removed)
      if (!feasible[(full - 1) & ~removed]) bestsep = std::min<std::size_t>(bestsep, std::popcount(removed));
    res.min_separator = bestsep;
  } else {
    // journeys through internal nodes never use the direct edge
    auto q = p;
    q.intervals[*p.edge_index(s, t)].clear();
    feasible = feasible_in(q);
  }
  std::vector<std::size_t> minimal;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!feasible[mask]) continue;
    bool is_min = true;
    for (std::size_t i = 0; i < k && is_min; ++i)
      if ((mask >> i & 1) && feasible[mask & ~(std::size_t{1} << i)]) is_min = false;
    if (is_min) minimal.push_back(mask);
  }
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t, std::size_t)> pack = [&](std::size_t from, std::size_t used, std::size_t count) {
    best = std::max(best, count);
    for (auto i = from; i < minimal.size(); ++i)
      if ((minimal[i] & used) == 0) pack(i + 1, used | minimal[i], count + 1);
  };
  pack(0, 0, 0);
  res.max_disjoint = best + (direct ? 1 : 0);
  return res;
}

}  // namespace tvg
