#pragma once

#include "tvg/core.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>
#include <string>

namespace tvg::io {

using json = nlohmann::json;

inline Time time_from_json(const json& j) {
  if (j.is_number_integer()) return Time(j.get<std::int64_t>());
  if (j.is_number_float()) return time_from_double(j.get<double>());
  if (j.is_string()) return parse_time(j.get<std::string>());
  throw input_error("expected a time value, got " + j.dump());
}

/// Integral times as JSON integers, others as "p/q" strings.
inline json time_to_json(const Time& t) {
  if (is_integral(t)) return t.numerator();
  return to_string(t);
}

namespace detail {

inline Names read_nodes(const json& doc) {
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw input_error("missing \"nodes\" array");
  Names ids;
  for (const auto& x : doc["nodes"]) {
    if (!x.is_string()) throw input_error("node ids must be strings");
    ids.push_back(x.get<std::string>());
  }
  return make_names(std::move(ids));
}

inline Edge read_pair(const Names& names, const json& p) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
    throw input_error("edge must be a pair of node ids: " + p.dump());
  return make_edge(names, p[0].get<std::string>(), p[1].get<std::string>());
}

}  // namespace detail

inline SnapshotSequence snapshots_from_json(const json& doc) {
  auto names = detail::read_nodes(doc);
  if (!doc.contains("snapshots") || !doc["snapshots"].is_array()) throw input_error("missing \"snapshots\" array");
  std::vector<EdgeSet> snaps;
  for (const auto& s : doc["snapshots"]) {
    if (!s.is_array()) throw input_error("snapshot must be an array of edges");
    EdgeSet es;
    for (const auto& p : s) es.push_back(detail::read_pair(names, p));
    snaps.push_back(std::move(es));
  }
  return make_snapshots(std::move(names), std::move(snaps));
}

inline IntervalGraph intervals_from_json(const json& doc) {
  auto names = detail::read_nodes(doc);
  Time latency(0);
  if (doc.contains("latency")) latency = time_from_json(doc["latency"]);
  std::map<Edge, std::vector<Interval>> edges;
  if (doc.contains("edges")) {
    for (const auto& e : doc["edges"]) {
      if (!e.contains("u") || !e.contains("v") || !e.contains("intervals")) throw input_error("edge needs u, v, intervals");
      auto edge = detail::read_pair(names, json::array({e["u"], e["v"]}));
      for (const auto& iv : e["intervals"]) {
        if (!iv.is_array() || iv.size() != 2) throw input_error("interval must be [start,end]");
        edges[edge].push_back({time_from_json(iv[0]), time_from_json(iv[1])});
      }
    }
  }
  auto g = make_intervals(std::move(names), std::move(edges), latency);
  if (doc.contains("lifetime")) {
    const auto& l = doc["lifetime"];
    if (!l.is_array() || l.size() != 2) throw input_error("lifetime must be [start,end]");
    g.span = Interval{time_from_json(l[0]), time_from_json(l[1])};
    if (!(g.span->start < g.span->end)) throw input_error("empty lifetime");
  }
  if (doc.contains("grid")) g.grid = time_from_json(doc["grid"]);
  return g;
}

inline TemporalGraph from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("format")) throw input_error("trace JSON needs a \"format\" field");
  auto fmt = doc["format"].get<std::string>();
  if (fmt == "snapshots") return snapshots_from_json(doc);
  if (fmt == "intervals") return intervals_from_json(doc);
  throw input_error("unknown format '" + fmt + "'");
}

/// Link-stream CSV with header "u,v,start,end". With `discrete`, rows must be
/// unit presences [i, i+1) and the result is a snapshot sequence.
inline TemporalGraph from_csv(std::istream& in, bool discrete, Time latency = Time(0)) {
  std::string line;
  if (!std::getline(in, line)) throw input_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,start,end") throw input_error("CSV header must be \"u,v,start,end\"");
  struct Row {
    std::string u, v;
    Time s, e;
  };
  std::vector<Row> rows;
  Names ids;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 4) throw input_error("CSV row needs 4 fields: " + line);
    rows.push_back({f[0], f[1], parse_time(f[2]), parse_time(f[3])});
    ids.push_back(f[0]);
    ids.push_back(f[1]);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto names = make_names(std::move(ids));
  if (discrete) {
    std::vector<EdgeSet> snaps;
    for (const auto& r : rows) {
      if (!is_integral(r.s) || r.e != r.s + 1 || r.s < Time(0)) throw input_error("discrete CSV rows need end = start + 1");
      auto i = static_cast<std::size_t>(r.s.numerator());
      if (snaps.size() <= i) snaps.resize(i + 1);
      snaps[i].push_back(make_edge(names, r.u, r.v));
    }
    return make_snapshots(std::move(names), std::move(snaps));
  }
  std::map<Edge, std::vector<Interval>> edges;
  for (const auto& r : rows) edges[make_edge(names, r.u, r.v)].push_back({r.s, r.e});
  return make_intervals(std::move(names), std::move(edges), latency);
}

inline json edge_json(const Names& names, Edge e) { return json::array({names[e.u], names[e.v]}); }

inline json to_json(const SnapshotSequence& s) {
  json snaps = json::array();
  for (const auto& snap : s.snapshots) {
    json es = json::array();
    for (auto e : snap) es.push_back(edge_json(s.nodes, e));
    snaps.push_back(es);
  }
  return {{"format", "snapshots"}, {"nodes", s.nodes}, {"snapshots", snaps}};
}

inline json to_json(const IntervalGraph& g) {
  json edges = json::array();
  for (const auto& [e, ivs] : g.edges) {
    json list = json::array();
    for (const auto& iv : ivs) list.push_back(json::array({time_to_json(iv.start), time_to_json(iv.end)}));
    edges.push_back({{"u", g.nodes[e.u]}, {"v", g.nodes[e.v]}, {"intervals", list}});
  }
  json doc = {{"format", "intervals"}, {"latency", time_to_json(g.latency)}, {"nodes", g.nodes}, {"edges", edges}};
  if (g.span) doc["lifetime"] = json::array({time_to_json(g.span->start), time_to_json(g.span->end)});
  if (g.grid) doc["grid"] = time_to_json(*g.grid);
  return doc;
}

inline json to_json(const TemporalGraph& g) {
  return std::visit([](const auto& x) { return to_json(x); }, g);
}

inline json to_json(const StaticGraph& g) {
  json es = json::array();
  for (auto e : g.edges) es.push_back(edge_json(g.nodes, e));
  return {{"nodes", g.nodes}, {"edges", es}};
}

inline std::string to_csv(const TemporalGraph& g) {
  std::string out = "u,v,start,end\n";
  auto row = [&](const Names& names, Edge e, const Time& s, const Time& t) {
    out += names[e.u] + "," + names[e.v] + "," + to_string(s) + "," + to_string(t) + "\n";
  };
  if (auto s = std::get_if<SnapshotSequence>(&g)) {
    for (std::size_t i = 0; i < s->length(); ++i)
      for (auto e : s->snapshots[i]) row(s->nodes, e, Time(static_cast<std::int64_t>(i)), Time(static_cast<std::int64_t>(i) + 1));
    return out;
  }
  const auto& ig = std::get<IntervalGraph>(g);
  for (const auto& [e, ivs] : ig.edges)
    for (const auto& iv : ivs) row(ig.nodes, e, iv.start, iv.end);
  return out;
}

inline StaticGraph static_from_json(const json& doc) {
  auto names = detail::read_nodes(doc);
  EdgeSet es;
  if (doc.contains("edges"))
    for (const auto& p : doc["edges"]) es.push_back(detail::read_pair(names, p));
  normalize(es);
  return {std::move(names), std::move(es)};
}

}  // namespace tvg::io
