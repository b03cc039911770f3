#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace tvg;

namespace {

SnapshotSequence seq(const std::string& name) {
  std::ifstream f(std::string(TVG_SAMPLES_DIR) + "/" + name);
  return std::get<SnapshotSequence>(io::from_json(io::json::parse(f)));
}

StaticGraph graph(const std::string& name) {
  std::ifstream f(std::string(TVG_SAMPLES_DIR) + "/" + name);
  return io::static_from_json(io::json::parse(f));
}

std::vector<Vertex> ids(const Names& names, std::initializer_list<const char*> xs) {
  std::vector<Vertex> out;
  for (auto x : xs) out.push_back(vertex_of(names, x));
  std::sort(out.begin(), out.end());
  return out;
}

SnapshotSequence pattern(std::initializer_list<EdgeSet> snaps) { return make_snapshots(oracle::letters(3), snaps); }

const EdgeSet ab{Edge(0, 1)}, bc{Edge(1, 2)};

}  // namespace

TEST(FiniteClasses, JourneyFigure) {
  auto s = seq("fig-journey.json");
  auto j = finite_class_membership(s, FiniteClass::J1A, Kind::strict);
  EXPECT_TRUE(j.value);
  EXPECT_EQ(j.witness, vertex_of(s.nodes, "a"));
  EXPECT_FALSE(finite_class_membership(s, FiniteClass::TC, Kind::strict).value);
}

TEST(FiniteClasses, ConnectedFigureIsNotTemporallyConnected) {
  auto s = seq("fig-connected.json");
  EXPECT_FALSE(finite_class_membership(s, FiniteClass::TC, Kind::strict).value);
  EXPECT_FALSE(finite_class_membership(s, FiniteClass::TC, Kind::nonstrict).value);
}

TEST(FiniteClasses, CompleteSnapshotIsInEveryClass) {
  auto s = make_snapshots(oracle::letters(3), {{Edge(0, 1), Edge(0, 2), Edge(1, 2)}});
  for (auto c : all_finite_classes) EXPECT_TRUE(finite_class_membership(s, c, Kind::nonstrict).value) << class_name(c);
  auto twice = make_snapshots(oracle::letters(3), {s.snapshots[0], s.snapshots[0]});
  for (auto c : all_finite_classes) EXPECT_TRUE(finite_class_membership(twice, c, Kind::strict).value) << class_name(c);
}

TEST(FiniteClasses, AgreeWithOracleClosure) {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 300; ++rep) {
    auto s = oracle::random_trace(rng, 2 + rep % 6, 1 + rep % 6, 0.3);
    auto n = s.n();
    auto d = static_cast<std::int64_t>(s.length());
    for (auto kind : {Kind::strict, Kind::nonstrict}) {
      auto cl = oracle::discrete_closure(s, kind);
      bool tc = true, j1a = false, ja1 = false;
      for (Vertex u = 0; u < n; ++u) {
        bool out = true, in = true;
        for (Vertex v = 0; v < n; ++v) {
          tc = tc && cl[u][v];
          out = out && cl[u][v];
          in = in && cl[v][u];
        }
        j1a = j1a || out;
        ja1 = ja1 || in;
      }
      EXPECT_EQ(finite_class_membership(s, FiniteClass::TC, kind).value, tc);
      EXPECT_EQ(finite_class_membership(s, FiniteClass::J1A, kind).value, j1a);
      EXPECT_EQ(finite_class_membership(s, FiniteClass::JA1, kind).value, ja1);
      EXPECT_EQ(finite_class_membership(s, FiniteClass::TCrt, kind).value, oracle::discrete_tcrt(s, 0, d, kind));
    }
  }
}

TEST(Parameters, BoundedRealization) {
  EXPECT_EQ(bounded_realization_delta(pattern({ab, bc, ab, bc})), 2u);
  EXPECT_EQ(bounded_realization_delta(pattern({ab, ab, ab})), 1u);
  EXPECT_EQ(bounded_realization_delta(pattern({ab, {}, {}, ab})), 3u);
}

TEST(Parameters, SmallestPeriod) {
  EXPECT_EQ(smallest_period(pattern({ab, bc, ab, bc})), 2u);
  EXPECT_FALSE(smallest_period(pattern({ab, bc, bc, ab})));
  std::ifstream f(std::string(TVG_SAMPLES_DIR) + "/fig17-triangle.json");
  auto g = io::from_json(io::json::parse(f));
  EXPECT_EQ(smallest_period(to_snapshots(unroll(g, 3))), to_snapshots(g).length());
}

TEST(Covering, SquareIllustration) {
  auto s = seq("covering-square.json");
  EXPECT_TRUE(verify_covering(s, CoverVersion::temporal, {ids(s.nodes, {"d"})}));
  EXPECT_TRUE(verify_covering(s, CoverVersion::permanent, {ids(s.nodes, {"a", "b", "d"})}));
  auto S = ids(s.nodes, {"a", "b", "d"});
  EXPECT_TRUE(verify_covering(s, CoverVersion::evolving, {S, S, S}));
  EXPECT_FALSE(verify_covering(s, CoverVersion::permanent, {ids(s.nodes, {"d"})}));
  EXPECT_THROW(verify_covering(s, CoverVersion::evolving, {S}), input_error);
  EXPECT_THROW(verify_covering(s, CoverVersion::temporal, {S, S}), input_error);
}

TEST(Covering, VersionsBoundEachOther) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 200; ++rep) {
    auto s = oracle::random_trace(rng, 5, 3, 0.35);
    auto n = s.n();
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << n) - 1);
    auto to_set = [&](std::uint32_t m) {
      std::vector<Vertex> out;
      for (Vertex v = 0; v < n; ++v)
        if (m >> v & 1) out.push_back(v);
      return out;
    };
    auto S = to_set(pick(rng));
    if (verify_covering(s, CoverVersion::permanent, {S}))
      EXPECT_TRUE(verify_covering(s, CoverVersion::evolving, {S, S, S}));
    std::vector<std::vector<Vertex>> ev{to_set(pick(rng)), to_set(pick(rng)), to_set(pick(rng))};
    if (verify_covering(s, CoverVersion::evolving, ev)) {
      std::vector<Vertex> all;
      for (const auto& x : ev) all.insert(all.end(), x.begin(), x.end());
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      EXPECT_TRUE(verify_covering(s, CoverVersion::temporal, {all}));
    }
    if (dominates(n, intersection_graph(s).edges, S)) EXPECT_TRUE(verify_covering(s, CoverVersion::permanent, {S}));
  }
}

TEST(RobustMis, PaperExamples) {
  auto tri = graph("triangle.json");
  EXPECT_FALSE(is_robust_mis(tri, ids(tri.nodes, {"a"})));
  EXPECT_FALSE(find_robust_mis(tri));
  auto bull = graph("bull.json");
  EXPECT_TRUE(is_robust_mis(bull, ids(bull.nodes, {"a", "d", "e"})));
  EXPECT_FALSE(is_robust_mis(bull, ids(bull.nodes, {"a", "c"})));
  EXPECT_EQ(find_robust_mis(bull), ids(bull.nodes, {"a", "d", "e"}));
  auto sq = graph("square.json");
  EXPECT_EQ(find_robust_mis(sq), ids(sq.nodes, {"a", "c"}));
  for (const auto& m : all_mis(sq)) EXPECT_TRUE(is_robust_mis(sq, m));
}

TEST(RobustMis, TreesAreAlwaysRobust) {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 2 + rep % 9;
    StaticGraph t{oracle::letters(n), {}};
    for (Vertex v = 1; v < n; ++v) t.edges.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
    normalize(t.edges);
    for (const auto& m : all_mis(t)) EXPECT_TRUE(is_robust_mis(t, m));
  }
}

TEST(RobustMis, DisconnectedIsInputError) {
  StaticGraph g{oracle::letters(3), {Edge(0, 1)}};
  EXPECT_THROW(is_robust_mis(g, {0, 2}), input_error);
}

TEST(RobustMis, MatchesSpanningTreeOracleUpToSix) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& es : oracle::all_graphs(n)) {
      if (!is_connected(n, es)) continue;
      StaticGraph g{oracle::letters(n), es};
      auto trees = oracle::spanning_trees(n, es);
      for (std::uint32_t m = 1; m < (1u << n); ++m) {
        if (!oracle::independent_maximal(n, es, m)) continue;
        std::vector<Vertex> S;
        for (Vertex v = 0; v < n; ++v)
          if (m >> v & 1) S.push_back(v);
        ASSERT_EQ(is_robust_mis(g, S), oracle::robust_by_trees(trees, m));
      }
    }
}

TEST(GraphEnumeration, KnownCounts) {
  std::vector<std::size_t> total{1, 2, 4, 11, 34, 156}, connected{1, 1, 2, 6, 21, 112};
  for (std::size_t n = 1; n <= 6; ++n) {
    auto gs = oracle::all_graphs(n);
    EXPECT_EQ(gs.size(), total[n - 1]);
    auto c = std::count_if(gs.begin(), gs.end(), [&](const EdgeSet& es) { return is_connected(n, es); });
    EXPECT_EQ(static_cast<std::size_t>(c), connected[n - 1]);
  }
}

TEST(Classify, Examples) {
  auto c = classify(seq("constant.json"));
  EXPECT_EQ(c.delta, 1u);
  EXPECT_EQ(c.tinterval, 4u);
  EXPECT_EQ(c.period, 1u);
  for (auto k : all_finite_classes)
    if (k != FiniteClass::K && k != FiniteClass::E1A) EXPECT_TRUE(c.get(k, Kind::nonstrict).value) << class_name(k);
  auto j = classify(seq("fig-journey.json"));
  EXPECT_TRUE(j.get(FiniteClass::J1A).value);
  EXPECT_FALSE(j.get(FiniteClass::TC).value);
  EXPECT_FALSE(j.tdiam);
  EXPECT_EQ(classify(pattern({ab, bc, ab, bc})).period, 2u);
}

TEST(Classify, HierarchyImplications) {
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 300; ++rep) {
    auto s = oracle::random_trace(rng, 2 + rep % 6, 1 + rep % 7, 0.2 + 0.1 * (rep % 5));
    auto r = classify(s);
    for (auto k : {Kind::strict, Kind::nonstrict}) {
      auto f = [&](FiniteClass c) { return r.get(c, k).value; };
      if (f(FiniteClass::K)) EXPECT_TRUE(f(FiniteClass::E1A) && f(FiniteClass::TC));
      if (f(FiniteClass::E1A)) EXPECT_TRUE(f(FiniteClass::J1A) && f(FiniteClass::JA1));
      if (f(FiniteClass::TC)) EXPECT_TRUE(f(FiniteClass::J1A) && f(FiniteClass::JA1));
      if (f(FiniteClass::TCrt)) EXPECT_TRUE(f(FiniteClass::TC));
    }
    for (auto c : all_finite_classes)
      if (r.get(c, Kind::strict).value) EXPECT_TRUE(r.get(c, Kind::nonstrict).value) << class_name(c);
    bool all_connected = true;
    for (const auto& snap : s.snapshots) all_connected = all_connected && is_connected(s.n(), snap);
    if (all_connected && s.length() >= s.n() - 1 && s.n() > 1) {
      ASSERT_TRUE(r.tdiam);
      EXPECT_LE(*r.tdiam, s.n() - 1);
    }
    if (r.period) {
      ASSERT_TRUE(r.delta);
      EXPECT_LE(*r.delta, *r.period);
    }
  }
}
