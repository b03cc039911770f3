#pragma once

#include "tvg/core.hpp"

#include <random>

namespace tvg {

/// Per-snapshot ordered edge selections.
using Schedule = std::vector<std::vector<Edge>>;

struct ForestState {
  std::vector<std::optional<Vertex>> parent;
  std::vector<bool> token;
  friend bool operator==(const ForestState&, const ForestState&) = default;
};

enum class MergeRule { smaller_parent, random };

inline ForestState forest_init(std::size_t n) { return {std::vector<std::optional<Vertex>>(n), std::vector<bool>(n, true)}; }

inline std::size_t tree_count(const ForestState& st) {
  return static_cast<std::size_t>(std::count_if(st.parent.begin(), st.parent.end(), [](const auto& p) { return !p; }));
}

/// Throws contract_error unless: parents form a forest over edges of the
/// current snapshot, every root holds a token and no other node does.
inline void check_forest(const ForestState& st, const EdgeSet& snapshot) {
  auto n = st.parent.size();
  for (Vertex v = 0; v < n; ++v) {
    if (st.parent[v]) {
      if (st.token[v]) throw contract_error("non-root holds a token");
      if (!contains(snapshot, Edge(v, *st.parent[v]))) throw contract_error("tree edge absent from the snapshot");
    } else if (!st.token[v]) {
      throw contract_error("root without a token");
    }
  }
  // every parent chain must reach a root within n steps
  for (Vertex v = 0; v < n; ++v) {
    auto x = v;
    std::size_t steps = 0;
    while (st.parent[x]) {
      x = *st.parent[x];
      if (++steps > n) throw contract_error("cycle in parent relation");
    }
  }
}

/// Merge when both endpoints hold tokens; circulate when a tokened root
/// selects an edge to its child (token moves down, edge flips); otherwise
/// nothing happens.
template <class Rng>
ForestState select_edge(ForestState st, const EdgeSet& snapshot, Edge e, MergeRule rule, Rng& rng) {
  if (!contains(snapshot, e)) throw contract_error("selected edge is absent from the current snapshot");
  auto a = e.u, b = e.v;
  if (st.token[a] && st.token[b]) {
    auto parent = a, child = b;
    if (rule == MergeRule::random && std::uniform_int_distribution<int>(0, 1)(rng) == 1) std::swap(parent, child);
    st.parent[child] = parent;
    st.token[child] = false;
    return st;
  }
  for (auto [r, c] : {std::pair{a, b}, std::pair{b, a}}) {
    if (st.token[r] && !st.parent[r] && st.parent[c] == r) {
      st.parent[c].reset();
      st.parent[r] = c;
      st.token[r] = false;
      st.token[c] = true;
      return st;
    }
  }
  return st;
}

inline ForestState select_edge(ForestState st, const EdgeSet& snapshot, Edge e) {
  std::mt19937_64 unused(0);
  return select_edge(std::move(st), snapshot, e, MergeRule::smaller_parent, unused);
}

/// Children whose tree edge disappears become tokened roots.
inline ForestState advance_snapshot(ForestState st, const EdgeSet& next) {
  for (Vertex v = 0; v < st.parent.size(); ++v)
    if (st.parent[v] && !contains(next, Edge(v, *st.parent[v]))) {
      st.parent[v].reset();
      st.token[v] = true;
    }
  return st;
}

/// Each snapshot: a random permutation of its edges followed by up to m
/// extra uniformly drawn selections.
template <class Rng>
Schedule random_fair_schedule(const SnapshotSequence& s, Rng& rng) {
  Schedule sch;
  for (const auto& snap : s.snapshots) {
    std::vector<Edge> sel(snap.begin(), snap.end());
    std::shuffle(sel.begin(), sel.end(), rng);
    if (!snap.empty()) {
      auto extra = std::uniform_int_distribution<std::size_t>(0, snap.size())(rng);
      std::uniform_int_distribution<std::size_t> pick(0, snap.size() - 1);
      for (std::size_t i = 0; i < extra; ++i) sel.push_back(snap[pick(rng)]);
    }
    sch.push_back(std::move(sel));
  }
  return sch;
}

inline void check_fair(const SnapshotSequence& s, const Schedule& sch) {
  if (sch.size() != s.length()) throw contract_error("schedule must list selections for every snapshot");
  for (std::size_t i = 0; i < s.length(); ++i) {
    auto seen = sch[i];
    normalize(seen);
    for (auto e : s.snapshots[i])
      if (!contains(seen, e)) throw contract_error("unfair schedule: an edge of snapshot " + std::to_string(i) + " is never selected");
  }
}

struct ForestPoint {
  std::size_t t = 0;
  std::size_t components = 0;
  std::size_t trees = 0;
  std::vector<std::size_t> trees_per_component;
};

struct ForestRun {
  std::vector<ForestPoint> series;
  double average_trees_per_component = 0;
  ForestState final_state;
  std::size_t steps = 0;
};

/// Runs the protocol over the sequence, asserting the forest invariants after
/// every atomic step. Measurements are taken at the end of each snapshot.
inline ForestRun run_forest(const SnapshotSequence& s, const Schedule& sch, MergeRule rule = MergeRule::smaller_parent,
                            std::uint64_t seed = 0) {
  check_fair(s, sch);
  std::mt19937_64 rng(seed);
  auto n = s.n();
  ForestRun run;
  auto st = forest_init(n);
  double ratio_sum = 0;
  for (std::size_t i = 0; i < s.length(); ++i) {
    const auto& snap = s.snapshots[i];
    st = advance_snapshot(std::move(st), snap);
    check_forest(st, snap);
    for (auto e : sch[i]) {
      st = select_edge(std::move(st), snap, e, rule, rng);
      check_forest(st, snap);
      ++run.steps;
    }
    auto label = component_labels(n, snap);
    ForestPoint pt{i, component_count(n, snap), tree_count(st), {}};
    pt.trees_per_component.assign(pt.components, 0);
    for (Vertex v = 0; v < n; ++v)
      if (!st.parent[v]) ++pt.trees_per_component[label[v]];
    if (pt.components) ratio_sum += static_cast<double>(pt.trees) / static_cast<double>(pt.components);
    run.series.push_back(std::move(pt));
  }
  run.average_trees_per_component = s.length() ? ratio_sum / static_cast<double>(s.length()) : 0;
  run.final_state = st;
  return run;
}

inline ForestRun run_forest(const SnapshotSequence& s, std::uint64_t seed, MergeRule rule = MergeRule::smaller_parent) {
  std::mt19937_64 rng(seed);
  auto sch = random_fair_schedule(s, rng);
  return run_forest(s, sch, rule, seed);
}

/// On a static graph, selections made by repeated random fair rounds until
/// one tree remains per component; nullopt if `budget` selections do not
/// suffice.
inline std::optional<std::size_t> selections_to_converge(const StaticGraph& g, std::uint64_t seed, std::size_t budget) {
  std::mt19937_64 rng(seed);
  auto n = g.n();
  auto target = component_count(n, g.edges);
  auto st = forest_init(n);
  std::size_t used = 0;
  if (tree_count(st) == target) return 0;
  std::vector<Edge> round(g.edges.begin(), g.edges.end());
  while (used < budget) {
    std::shuffle(round.begin(), round.end(), rng);
    for (auto e : round) {
      st = select_edge(std::move(st), g.edges, e);
      check_forest(st, g.edges);
      if (++used, tree_count(st) == target) return used;
      if (used >= budget) break;
    }
  }
  return std::nullopt;
}

}  // namespace tvg
