#include "tvg/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  for (auto& a : args)
    if (a.ends_with(".json")) a = std::string(TVG_SAMPLES_DIR) + "/" + a;
  int code = tvg::cli::dispatch(args, in, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json js(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, ClosureDot) {
  auto r = run({"closure", "--strict", "fig-closure.json", "--output", "dot"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t lines = 0, both = 0;
  std::istringstream s(r.out);
  for (std::string line; std::getline(s, line);) {
    if (line.find("->") != std::string::npos) ++lines;
    if (line.find("dir=both") != std::string::npos) ++both;
  }
  EXPECT_EQ(lines, 10u);
  EXPECT_EQ(both, 7u);
}

TEST(Cli, ClosureJsonAndRoundTrip) {
  auto r = run({"closure", "fig-journey.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = js(r);
  EXPECT_TRUE(j.contains("arcs"));
  auto rt = run({"closure", "--roundtrip", "fig-overlap.json", "--window", "0", "4"});
  ASSERT_EQ(rt.code, 0) << rt.err;
  EXPECT_NE(rt.out.find("\"ea\""), std::string::npos);
}

TEST(Cli, Classify) {
  auto r = run({"classify", "fig-journey.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = js(r);
  EXPECT_EQ(j["J1A"], true);
  EXPECT_EQ(j["TC"], false);
  EXPECT_TRUE(j["tdiam"].is_null());
  for (auto key : {"JA1", "TCrt", "E1A", "K", "delta", "period", "tinterval", "rtdiam", "alpha"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, Param) {
  auto r = run({"param", "--tinterval", "constant.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = js(r);
  EXPECT_EQ(j["value"], 4);
  EXPECT_TRUE(j["ops"].contains("compose"));
  auto d = run({"param", "--footprint-realization", "constant.json", "--decide", "1"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(js(d)["value"], true);
}

TEST(Cli, Stats) {
  auto r = run({"stats", "fig17-triangle.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = js(r);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["k"], 8);
}

TEST(Cli, ConvertRoundTrip) {
  auto a = run({"convert", "fig-journey.json", "--to", "intervals"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto b = run({"convert", "-", "--to", "snapshots"}, a.out);
  ASSERT_EQ(b.code, 0) << b.err;
  auto orig = run({"convert", "fig-journey.json", "--to", "snapshots"});
  EXPECT_EQ(js(b)["snapshots"], js(orig)["snapshots"]);
  auto csv = run({"convert", "fig-journey.json", "--to", "csv"});
  ASSERT_EQ(csv.code, 0);
  auto back = run({"convert", "-", "--discrete", "--to", "snapshots"}, csv.out);
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(js(back)["snapshots"], js(orig)["snapshots"]);
}

TEST(Cli, JourneyMetrics) {
  auto f = run({"journey", "fig-distance.json", "--from", "a", "--to", "d", "--metric", "fastest"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(js(f)["duration"], "3/100");
  auto s = run({"journey", "fig-distance.json", "--from", "a", "--to", "d", "--metric", "shortest"});
  EXPECT_EQ(js(s)["hop_count"], 2);
  auto v = run({"journey", "fig-basic.json", "--from", "a", "--to", "c", "--metric", "view", "--at", "1.1"});
  EXPECT_EQ(js(v)["departure"], "9/10");
  auto m = run({"journey", "menger-dynamic.json", "--from", "s", "--to", "t", "--metric", "disjoint"});
  EXPECT_EQ(js(m)["max_disjoint"], 1);
  EXPECT_EQ(js(m)["min_separator"], 2);
  auto sw = run({"journey", "fig17-triangle.json", "--from", "a", "--metric", "sweep", "--periods", "3"});
  ASSERT_EQ(sw.code, 0) << sw.err;
  EXPECT_EQ(js(sw).size(), 4u);
}

TEST(Cli, ComponentsAndMis) {
  auto c = run({"components", "fig-overlap.json"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(js(c)["components"].size(), 2u);
  auto m = run({"robust-mis", "bull.json"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(js(m)["robust_mis"], nlohmann::json({"a", "d", "e"}));
  auto t = run({"robust-mis", "triangle.json"});
  EXPECT_TRUE(js(t)["robust_mis"].is_null());
}

TEST(Cli, SimulatorsAreDeterministic) {
  auto a = run({"sim", "forest", "constant.json", "--seed", "4"});
  auto b = run({"sim", "forest", "constant.json", "--seed", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto r = run({"sim", "relabel", "fig-journey.json", "--algo", "broadcast", "--node", "e", "--runs", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(js(r)["success_rate"], 0.0);
  EXPECT_EQ(js(r)["necessary"], false);
}

TEST(Cli, WindowsCsv) {
  auto r = run({"windows", "fig-overlap.json", "--metric", "tc", "--width", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "start,value\n0,0\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"stats", "-"}, "{not json").code, 1);
  EXPECT_EQ(run({"stats", "no-such-file.json"}).code, 1);
  EXPECT_EQ(run({"journey", "fig-journey.json", "--from", "zz", "--metric", "foremost"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"stats", "fig-journey.json", "--bogus"}).code, 1);
  EXPECT_EQ(run({"windows", "fig-journey.json", "--metric", "tc", "--width", "9"}).code, 1);
  Result r = run({"journey", "menger-dynamic.json", "--from", "s", "--to", "t", "--metric", "disjoint", "--limit-n", "3"});
  EXPECT_EQ(r.code, 2);
}
