#pragma once

#include "tvg/classes.hpp"
#include "tvg/closure.hpp"

#include <random>
#include <set>

namespace tvg {

enum class RelabelAlgo { broadcast, count_sentinel, count_uniform, count_circulate };

inline const char* algo_name(RelabelAlgo a) {
  constexpr const char* names[] = {"broadcast", "count-sentinel", "count-uniform", "count-circulate"};
  return names[static_cast<int>(a)];
}

inline RelabelAlgo parse_algo(std::string_view s) {
  if (s == "broadcast") return RelabelAlgo::broadcast;
  if (s == "count-sentinel") return RelabelAlgo::count_sentinel;
  if (s == "count-uniform") return RelabelAlgo::count_uniform;
  if (s == "count-circulate") return RelabelAlgo::count_circulate;
  throw input_error("unknown relabeling algorithm '" + std::string(s) + "'");
}

inline bool needs_special(RelabelAlgo a) { return a == RelabelAlgo::broadcast || a == RelabelAlgo::count_sentinel; }

/// broadcast: 1 = informed, 0 = not. count-sentinel: the sentinel holds its
/// counter, others 0 = not yet counted, 1 = counted. count-uniform and
/// count-circulate: per-node count, 0 = eliminated.
struct RelabelState {
  RelabelAlgo algo = RelabelAlgo::broadcast;
  Vertex special = 0;
  std::vector<std::int64_t> label;
  friend bool operator==(const RelabelState&, const RelabelState&) = default;
};

/// An interaction (a, b): for the counting algorithms a is the absorbing side.
using Interaction = std::pair<Vertex, Vertex>;
using OrientedSchedule = std::vector<std::vector<Interaction>>;

inline RelabelState relabel_init(std::size_t n, RelabelAlgo algo, Vertex special = 0) {
  if (needs_special(algo) && special >= n) throw input_error("algorithm needs an emitter or sentinel node");
  RelabelState st{algo, special, std::vector<std::int64_t>(n, 0)};
  switch (algo) {
    case RelabelAlgo::broadcast:
      st.label[special] = 1;
      break;
    case RelabelAlgo::count_sentinel:
      break;
    default:
      std::fill(st.label.begin(), st.label.end(), 1);
  }
  return st;
}

inline void apply_rule(RelabelState& st, Vertex a, Vertex b) {
  auto& l = st.label;
  switch (st.algo) {
    case RelabelAlgo::broadcast:
      if (l[a] || l[b]) l[a] = l[b] = 1;
      break;
    case RelabelAlgo::count_sentinel: {
      if (a != st.special && b != st.special) break;
      auto o = a == st.special ? b : a;
      if (l[o] == 0) {
        l[o] = 1;
        ++l[st.special];
      }
      break;
    }
    case RelabelAlgo::count_uniform:
      if (l[a] > 0 && l[b] > 0) {
        l[a] += l[b];
        l[b] = 0;
      }
      break;
    case RelabelAlgo::count_circulate:
      if (l[a] > 0 && l[b] > 0) {
        l[a] += l[b];
        l[b] = 0;
      } else if (l[a] > 0 || l[b] > 0) {
        std::swap(l[a], l[b]);  // the surviving counter moves across
      }
      break;
  }
}

/// Throws contract_error if an algorithm invariant is broken.
inline void check_relabel(const RelabelState& st, const RelabelState* before = nullptr) {
  auto n = static_cast<std::int64_t>(st.label.size());
  switch (st.algo) {
    case RelabelAlgo::broadcast:
      if (before)
        for (std::size_t v = 0; v < st.label.size(); ++v)
          if (before->label[v] && !st.label[v]) throw contract_error("informed node lost its information");
      break;
    case RelabelAlgo::count_sentinel: {
      std::int64_t counted = 0;
      for (std::size_t v = 0; v < st.label.size(); ++v)
        if (v != st.special) counted += st.label[v];
      if (counted != st.label[st.special]) throw contract_error("sentinel counter differs from counted nodes");
      break;
    }
    default:
      if (std::accumulate(st.label.begin(), st.label.end(), std::int64_t{0}) != n)
        throw contract_error("counts no longer sum to n");
  }
}

inline bool relabel_success(const RelabelState& st) {
  auto n = static_cast<std::int64_t>(st.label.size());
  switch (st.algo) {
    case RelabelAlgo::broadcast:
      return std::all_of(st.label.begin(), st.label.end(), [](auto x) { return x == 1; });
    case RelabelAlgo::count_sentinel:
      return st.label[st.special] == n - 1;
    default:
      return std::find(st.label.begin(), st.label.end(), n) != st.label.end();
  }
}

template <class Rng>
OrientedSchedule random_oriented_schedule(const SnapshotSequence& s, Rng& rng) {
  OrientedSchedule sch;
  std::bernoulli_distribution flip(0.5);
  for (const auto& snap : s.snapshots) {
    std::vector<Edge> sel(snap.begin(), snap.end());
    std::shuffle(sel.begin(), sel.end(), rng);
    if (!snap.empty()) {
      auto extra = std::uniform_int_distribution<std::size_t>(0, snap.size())(rng);
      std::uniform_int_distribution<std::size_t> pick(0, snap.size() - 1);
      for (std::size_t i = 0; i < extra; ++i) sel.push_back(snap[pick(rng)]);
    }
    std::vector<Interaction> out;
    for (auto e : sel) out.push_back(flip(rng) ? Interaction{e.u, e.v} : Interaction{e.v, e.u});
    sch.push_back(std::move(out));
  }
  return sch;
}

inline void check_fair(const SnapshotSequence& s, const OrientedSchedule& sch) {
  if (sch.size() != s.length()) throw contract_error("schedule must list selections for every snapshot");
  for (std::size_t i = 0; i < s.length(); ++i) {
    EdgeSet seen;
    for (auto [a, b] : sch[i]) {
      Edge e(a, b);
      if (a == b || !contains(s.snapshots[i], e)) throw contract_error("selected edge is absent from its snapshot");
      seen.push_back(e);
    }
    normalize(seen);
    if (seen != s.snapshots[i]) throw contract_error("unfair schedule: an edge of snapshot " + std::to_string(i) + " is never selected");
  }
}

/// Applies every selection atomically, asserting invariants after each step.
inline RelabelState run_relabel(const SnapshotSequence& s, RelabelAlgo algo, Vertex special, const OrientedSchedule& sch) {
  check_fair(s, sch);
  auto st = relabel_init(s.n(), algo, special);
  check_relabel(st);
  for (const auto& round : sch)
    for (auto [a, b] : round) {
      auto before = st;
      apply_rule(st, a, b);
      check_relabel(st, &before);
    }
  return st;
}

struct RelabelSummary {
  double success_rate = 0;
  std::size_t runs = 0;
  std::size_t successes = 0;
};

inline RelabelSummary simulate_relabel(const SnapshotSequence& s, RelabelAlgo algo, Vertex special, std::uint64_t seed, std::size_t runs) {
  RelabelSummary sum{0, runs, 0};
  for (std::size_t r = 0; r < runs; ++r) {
    std::mt19937_64 rng(seed + r);
    if (relabel_success(run_relabel(s, algo, special, random_oriented_schedule(s, rng)))) ++sum.successes;
  }
  sum.success_rate = runs ? static_cast<double>(sum.successes) / static_cast<double>(runs) : 0;
  return sum;
}

struct Conditions {
  bool necessary = false;
  bool sufficient = false;
};

/// broadcast: necessary = non-strict journeys from the emitter to all,
/// sufficient = strict ones. count-sentinel: both = the sentinel is adjacent
/// to every node in the footprint. count-uniform: necessary = some node is
/// reached by all (non-strict), sufficient = complete footprint.
/// count-circulate: necessary as count-uniform; no sufficient condition is
/// claimed.
inline Conditions check_conditions(const SnapshotSequence& s, RelabelAlgo algo, Vertex special = 0) {
  auto n = s.n();
  switch (algo) {
    case RelabelAlgo::broadcast: {
      if (special >= n) throw input_error("broadcast needs an emitter");
      auto reaches_all = [&](Kind k) {
        auto c = closure(s, k);
        for (Vertex v = 0; v < n; ++v)
          if (!c.has(special, v)) return false;
        return true;
      };
      return {reaches_all(Kind::nonstrict), reaches_all(Kind::strict)};
    }
    case RelabelAlgo::count_sentinel: {
      if (special >= n) throw input_error("count-sentinel needs a sentinel");
      auto fp = footprint(s);
      bool star = true;
      for (Vertex v = 0; v < n; ++v)
        if (v != special && !fp.has_edge(special, v)) star = false;
      return {star, star};
    }
    case RelabelAlgo::count_uniform:
      return {finite_class_membership(s, FiniteClass::JA1, Kind::nonstrict).value,
              finite_class_membership(s, FiniteClass::K, Kind::strict).value};
    case RelabelAlgo::count_circulate:
      return {finite_class_membership(s, FiniteClass::JA1, Kind::nonstrict).value, false};
  }
  return {};
}

/// Every final state reachable under some fair schedule. Within a snapshot
/// the search runs over (labels, set of edges selected so far); a snapshot
/// ends only once every present edge has been selected.
inline std::set<std::vector<std::int64_t>> exhaustive_outcomes(const SnapshotSequence& s, RelabelAlgo algo, Vertex special = 0,
                                                               std::size_t max_edges = 6) {
  auto init = relabel_init(s.n(), algo, special);
  std::set<std::vector<std::int64_t>> frontier{init.label};
  for (const auto& snap : s.snapshots) {
    if (snap.size() > max_edges) throw contract_error("exhaustive schedules limited to " + std::to_string(max_edges) + " edges per snapshot");
    auto full = (std::uint32_t{1} << snap.size()) - 1;
    std::set<std::pair<std::vector<std::int64_t>, std::uint32_t>> seen;
    std::vector<std::pair<std::vector<std::int64_t>, std::uint32_t>> stack;
    for (const auto& l : frontier) {
      seen.insert({l, 0});
      stack.push_back({l, 0});
    }
    std::set<std::vector<std::int64_t>> next;
    while (!stack.empty()) {
      auto [l, mask] = stack.back();
      stack.pop_back();
      if (mask == full) next.insert(l);
      for (std::size_t i = 0; i < snap.size(); ++i)
        for (auto [a, b] : {Interaction{snap[i].u, snap[i].v}, Interaction{snap[i].v, snap[i].u}}) {
          RelabelState st{algo, special, l};
          apply_rule(st, a, b);
          std::pair key{st.label, mask | std::uint32_t{1} << i};
          if (seen.insert(key).second) stack.push_back(key);
        }
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace tvg
