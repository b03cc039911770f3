#pragma once

#include "tvg/classes.hpp"
#include "tvg/closure.hpp"
#include "tvg/hierarchy.hpp"
#include "tvg/io.hpp"
#include "tvg/journeys.hpp"
#include "tvg/relabel.hpp"
#include "tvg/simforest.hpp"
#include "tvg/windows.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace tvg::cli {

using io::json;

namespace detail {

struct Common {
  std::string input = "-";
  std::string output = "json";
  bool discrete_csv = false;
  std::string csv_latency = "0";
};

inline std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

inline bool looks_like_csv(const std::string& path, const std::string& text) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return true;
  return text.rfind("u,v,start,end", 0) == 0;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

inline TemporalGraph load(const Common& c, std::istream& in) {
  auto text = slurp(c.input, in);
  if (looks_like_csv(c.input, text)) {
    std::istringstream ss(text);
    return io::from_csv(ss, c.discrete_csv, parse_time(c.csv_latency));
  }
  auto doc = parse_json(text);
  try {
    return io::from_json(doc);
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed trace: ") + e.what());
  }
}

/// Static graph documents ("format":"static") or the footprint of a trace.
inline StaticGraph load_static(const Common& c, std::istream& in) {
  auto text = slurp(c.input, in);
  if (!looks_like_csv(c.input, text)) {
    auto doc = parse_json(text);
    if (doc.is_object() && doc.value("format", "") == "static") return io::static_from_json(doc);
    std::istringstream again(text);
    Common copy = c;
    copy.input = "-";
    return footprint(load(copy, again));
  }
  std::istringstream ss(text);
  return footprint(io::from_csv(ss, c.discrete_csv, parse_time(c.csv_latency)));
}

inline std::vector<Vertex> parse_nodes(const Names& names, const std::string& list) {
  std::vector<Vertex> out;
  std::stringstream ss(list);
  std::string id;
  while (std::getline(ss, id, ','))
    if (!id.empty()) out.push_back(vertex_of(names, id));
  return out;
}

inline json names_json(const Names& names, const std::vector<Vertex>& vs) {
  json a = json::array();
  for (auto v : vs) a.push_back(names[v]);
  return a;
}

inline json opt_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }
inline json opt_json(const std::optional<Time>& v) { return v ? io::time_to_json(*v) : json(nullptr); }

inline json journey_json(const Presence& p, const Journey& j) {
  json hops = json::array();
  for (const auto& h : j.hops) hops.push_back(json::array({p.nodes[h.from], p.nodes[h.to], io::time_to_json(h.t)}));
  auto info = summarize(p, j);
  return {{"hops", hops},
          {"kind", kind_name(j.kind)},
          {"departure", io::time_to_json(info.departure)},
          {"arrival", io::time_to_json(info.arrival)},
          {"hop_count", info.hop_count},
          {"duration", io::time_to_json(info.duration)},
          {"max_wait", io::time_to_json(info.max_wait)}};
}

inline Journey journey_from_json(const Names& names, const json& doc) {
  Journey j;
  j.kind = doc.value("kind", "strict") == "nonstrict" ? Kind::nonstrict : Kind::strict;
  if (!doc.contains("hops") || !doc["hops"].is_array()) throw input_error("journey needs a \"hops\" array");
  for (const auto& h : doc["hops"]) {
    if (!h.is_array() || h.size() != 3) throw input_error("hop must be [from, to, time]");
    j.hops.push_back({vertex_of(names, h[0].get<std::string>()), vertex_of(names, h[1].get<std::string>()), io::time_from_json(h[2])});
  }
  return j;
}

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string closure_dot(const Closure& c) {
  std::string out = "digraph closure {\n";
  for (Vertex u = 0; u < c.n(); ++u) out += "  " + quote(c.nodes[u]) + ";\n";
  for (auto [u, v] : c.arcs()) {
    bool mutual = c.reach[v][u];
    if (mutual && v < u) continue;
    out += "  " + quote(c.nodes[u]) + " -> " + quote(c.nodes[v]) + (mutual ? " [dir=both]" : "") + ";\n";
  }
  return out + "}\n";
}

}  // namespace detail

/// Runs one command. Exit codes: 0 success, 1 input error, 2 contract violation.
inline int dispatch(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal graph analysis toolkit", "tvg"};
  app.require_subcommand(1);
  detail::Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input,--input", c.input, "trace file (JSON or CSV); '-' reads stdin");
    sub->add_flag("--discrete", c.discrete_csv, "read CSV rows as unit snapshots");
    sub->add_option("--csv-latency", c.csv_latency, "latency for continuous CSV input");
  };
  auto add_output = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--output,-o", c.output, "output format")->check(CLI::IsMember(allowed));
  };
  bool nonstrict = false;
  auto add_kind = [&](CLI::App* sub) { sub->add_flag("--nonstrict", nonstrict, "use non-strict journeys"); };

  auto* stats_cmd = app.add_subcommand("stats", "trace statistics");
  add_common(stats_cmd);

  auto* convert_cmd = app.add_subcommand("convert", "convert between representations");
  add_common(convert_cmd);
  std::string to = "snapshots";
  convert_cmd->add_option("--to", to, "target format")->check(CLI::IsMember({"snapshots", "intervals", "csv"}));

  auto* closure_cmd = app.add_subcommand("closure", "transitive closure of journeys");
  add_common(closure_cmd);
  add_output(closure_cmd, {"json", "dot"});
  bool strict_flag = false, roundtrip = false;
  std::vector<std::int64_t> window;
  closure_cmd->add_flag("--strict", strict_flag, "strict journeys (default)");
  add_kind(closure_cmd);
  closure_cmd->add_flag("--roundtrip", roundtrip, "round-trip closure with ea/ld labels");
  closure_cmd->add_option("--window", window, "round-trip window start end")->expected(2);

  auto* classify_cmd = app.add_subcommand("classify", "class membership and trace parameters");
  add_common(classify_cmd);

  auto* param_cmd = app.add_subcommand("param", "intersection-hierarchy parameter");
  add_common(param_cmd);
  add_kind(param_cmd);
  auto* param_group = param_cmd->add_option_group("parameter");
  bool p_tint = false, p_foot = false, p_tdiam = false, p_rt = false;
  param_group->add_flag("--tinterval", p_tint);
  param_group->add_flag("--footprint-realization", p_foot);
  param_group->add_flag("--tdiam", p_tdiam);
  param_group->add_flag("--rtdiam", p_rt);
  param_group->require_option(1);
  std::optional<std::size_t> decide_len;
  param_cmd->add_option("--decide", decide_len, "decide for this window length");

  auto* journey_cmd = app.add_subcommand("journey", "journeys and temporal distances");
  add_common(journey_cmd);
  add_kind(journey_cmd);
  std::string from, target, metric = "foremost", start_s, end_s, at_s, journey_file;
  journey_cmd->add_option("--from", from, "source node");
  journey_cmd->add_option("--to", target, "target node");
  journey_cmd->add_option("--metric", metric)
      ->check(CLI::IsMember({"foremost", "shortest", "fastest", "view", "distance", "disjoint", "sweep", "validate"}));
  journey_cmd->add_option("--start", start_s, "start time (default: lifetime start)");
  journey_cmd->add_option("--end", end_s, "window end for fastest/sweep (default: lifetime end)");
  journey_cmd->add_option("--at", at_s, "arrival deadline for the temporal view");
  journey_cmd->add_option("--journey", journey_file, "journey JSON to validate");
  std::size_t limit_n = 0;
  journey_cmd->add_option("--limit-n", limit_n, "node bound for exhaustive search");
  std::size_t periods = 1;
  journey_cmd->add_option("--periods", periods, "treat the trace as periodic and unroll this many periods")->check(CLI::PositiveNumber);

  auto* comp_cmd = app.add_subcommand("components", "maximal closed temporal components");
  add_common(comp_cmd);
  add_kind(comp_cmd);
  std::string focus;
  bool semaphore = false;
  comp_cmd->add_option("--focus", focus, "comma-separated node subset to enumerate over");
  comp_cmd->add_flag("--semaphore", semaphore, "apply the semaphore gadget to the footprint first");
  comp_cmd->add_option("--limit-n", limit_n, "node bound for exhaustive search");

  auto* mis_cmd = app.add_subcommand("robust-mis", "robust maximal independent sets of the footprint");
  add_common(mis_cmd);
  std::string check_set;
  mis_cmd->add_option("--check", check_set, "comma-separated set to check instead of searching");
  mis_cmd->add_option("--limit-n", limit_n, "node bound for exhaustive search");

  auto* sim_cmd = app.add_subcommand("sim", "protocol simulators");
  sim_cmd->require_subcommand(1);
  std::uint64_t seed = 0;
  auto* forest_cmd = sim_cmd->add_subcommand("forest", "spanning-forest maintenance");
  add_common(forest_cmd);
  std::string schedule_file;
  bool random_merge = false;
  forest_cmd->add_option("--seed", seed);
  forest_cmd->add_option("--schedule", schedule_file, "JSON {\"selections\":[[[u,v],...],...]}");
  forest_cmd->add_flag("--random-merge", random_merge, "seeded random parent choice on merges");
  auto* relabel_cmd = sim_cmd->add_subcommand("relabel", "graph relabeling algorithms");
  add_common(relabel_cmd);
  std::string algo = "broadcast", node;
  std::size_t runs = 100;
  relabel_cmd->add_option("--algo", algo)->check(CLI::IsMember({"broadcast", "count-sentinel", "count-uniform", "count-circulate"}));
  relabel_cmd->add_option("--node", node, "emitter or sentinel");
  relabel_cmd->add_option("--seed", seed);
  relabel_cmd->add_option("--runs", runs);

  auto* windows_cmd = app.add_subcommand("windows", "sliding-window metric series");
  add_common(windows_cmd);
  add_kind(windows_cmd);
  add_output(windows_cmd, {"csv", "json"});
  std::string wmetric = "tdiam", width_s, step_s = "1";
  windows_cmd->add_option("--metric", wmetric)->check(CLI::IsMember({"tdiam", "ecc", "tc"}));
  windows_cmd->add_option("--width", width_s)->required();
  windows_cmd->add_option("--step", step_s);
  windows_cmd->add_option("--node", node, "node for ecc");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return 1;
  }
  if (windows_cmd->parsed() && c.output == "json" && windows_cmd->count("--output") == 0) c.output = "csv";
  Kind kind = nonstrict ? Kind::nonstrict : Kind::strict;
  auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };

  try {
    if (stats_cmd->parsed()) {
      auto st = stats(detail::load(c, in));
      emit({{"n", st.n}, {"m", st.m}, {"mu", st.mu}, {"k", st.k},
            {"lifetime", json::array({io::time_to_json(st.lifetime_min), io::time_to_json(st.lifetime_max)})}});
    } else if (convert_cmd->parsed()) {
      auto g = detail::load(c, in);
      if (to == "csv") {
        out << io::to_csv(g);
      } else if (to == "intervals") {
        emit(is_discrete(g) ? io::to_json(to_intervals(std::get<SnapshotSequence>(g))) : io::to_json(g));
      } else if (is_discrete(g)) {
        emit(io::to_json(g));
      } else {
        auto d = discretize(std::get<IntervalGraph>(g));
        auto doc = io::to_json(d.seq);
        json slots = json::array();
        for (const auto& s : d.slots) slots.push_back(json::array({io::time_to_json(s.start), io::time_to_json(s.end)}));
        doc["slots"] = slots;
        emit(doc);
      }
    } else if (closure_cmd->parsed()) {
      if (strict_flag && nonstrict) throw input_error("--strict and --nonstrict are exclusive");
      auto s = to_snapshots(detail::load(c, in));
      if (roundtrip) {
        std::int64_t a = 0, b = static_cast<std::int64_t>(s.length());
        if (window.size() == 2) a = window[0], b = window[1];
        auto r = roundtrip_closure(s, a, b, kind);
        if (c.output == "dot") {
          std::string dot = "digraph roundtrip {\n";
          for (Vertex u = 0; u < r.n; ++u)
            for (Vertex v = 0; v < r.n; ++v)
              if (u != v && r.has(u, v))
                dot += "  " + detail::quote(s.nodes[u]) + " -> " + detail::quote(s.nodes[v]) + " [ea=" + std::to_string(*r.ea_at(u, v)) +
                       ", ld=" + std::to_string(*r.ld_at(u, v)) + "];\n";
          out << dot << "}\n";
        } else {
          json arcs = json::array();
          for (Vertex u = 0; u < r.n; ++u)
            for (Vertex v = 0; v < r.n; ++v)
              if (u != v && r.has(u, v)) arcs.push_back({{"u", s.nodes[u]}, {"v", s.nodes[v]}, {"ea", *r.ea_at(u, v)}, {"ld", *r.ld_at(u, v)}});
          emit({{"kind", kind_name(kind)}, {"window", json::array({a, b})}, {"arcs", arcs}});
        }
      } else {
        auto cl = closure(s, kind);
        if (c.output == "dot") {
          out << detail::closure_dot(cl);
        } else {
          json arcs = json::array();
          for (auto [u, v] : cl.arcs()) arcs.push_back(json::array({s.nodes[u], s.nodes[v]}));
          emit({{"kind", kind_name(kind)}, {"nodes", s.nodes}, {"arcs", arcs}});
        }
      }
    } else if (classify_cmd->parsed()) {
      auto s = to_snapshots(detail::load(c, in));
      auto r = classify(s);
      json doc, ns, wit;
      for (auto cls : all_finite_classes) {
        doc[class_name(cls)] = r.get(cls).value;
        ns[class_name(cls)] = r.get(cls, Kind::nonstrict).value;
        if (r.get(cls).witness && (cls == FiniteClass::J1A || cls == FiniteClass::JA1 || cls == FiniteClass::E1A))
          wit[class_name(cls)] = s.nodes[*r.get(cls).witness];
      }
      doc["nonstrict"] = ns;
      doc["witness"] = wit.is_null() ? json::object() : wit;
      doc["delta"] = detail::opt_json(r.delta);
      doc["period"] = detail::opt_json(r.period);
      doc["tinterval"] = detail::opt_json(r.tinterval);
      doc["tdiam"] = detail::opt_json(r.tdiam);
      doc["rtdiam"] = detail::opt_json(r.rtdiam);
      doc["alpha"] = detail::opt_json(r.alpha);
      emit(doc);
    } else if (param_cmd->parsed()) {
      auto s = to_snapshots(detail::load(c, in));
      auto report = [&](const auto& alg) {
        if (decide_len) {
          auto d = decide(alg, *decide_len);
          emit({{"value", d.value}, {"ops", {{"compose", d.ops.compose}, {"test", d.ops.test}}}});
        } else {
          auto r = extremal(alg);
          emit({{"value", detail::opt_json(r.value)}, {"ops", {{"compose", r.ops.compose}, {"test", r.ops.test}}}});
        }
      };
      if (p_tint) report(tinterval(s));
      if (p_foot) report(footprint_realization(s));
      if (p_tdiam) report(tdiameter(s, kind));
      if (p_rt) report(rt_tdiameter(s, kind));
    } else if (journey_cmd->parsed()) {
      auto base = detail::load(c, in);
      auto g = periods > 1 ? unroll(base, periods) : base;
      auto p = presence(g);
      auto life = presence(base).lifetime;
      Time start = start_s.empty() ? life.start : parse_time(start_s);
      Time end = end_s.empty() ? life.end : parse_time(end_s);
      auto need = [&](const std::string& id, const char* what) {
        if (id.empty()) throw input_error(std::string("journey needs ") + what);
        return vertex_of(p.nodes, id);
      };
      if (metric == "validate") {
        if (journey_file.empty()) throw input_error("--journey is required for validation");
        auto j = detail::journey_from_json(p.nodes, detail::parse_json(detail::slurp(journey_file, in)));
        emit({{"valid", validate_journey(p, j)}});
      } else if (metric == "foremost") {
        auto u = need(from, "--from");
        auto r = earliest_arrival(g, u, start, kind);
        if (!target.empty()) {
          auto j = journey_to(r, vertex_of(p.nodes, target));
          emit(j ? detail::journey_json(p, *j) : json(nullptr));
        } else {
          json arr, par;
          for (Vertex v = 0; v < p.n(); ++v) {
            arr[p.nodes[v]] = r.arrival[v] ? io::time_to_json(*r.arrival[v]) : json(nullptr);
            par[p.nodes[v]] = r.parent[v] ? json::array({p.nodes[r.parent[v]->from], io::time_to_json(r.parent[v]->t)}) : json(nullptr);
          }
          emit({{"source", from}, {"start", io::time_to_json(start)}, {"arrival", arr}, {"parent", par}});
        }
      } else if (metric == "shortest") {
        auto j = shortest_journey(p, need(from, "--from"), need(target, "--to"), start, kind);
        emit(j ? detail::journey_json(p, *j) : json(nullptr));
      } else if (metric == "fastest") {
        auto j = fastest_journey(p, need(from, "--from"), need(target, "--to"), {start, end}, kind);
        emit(j ? detail::journey_json(p, *j) : json(nullptr));
      } else if (metric == "view") {
        if (at_s.empty()) throw input_error("--at is required for the temporal view");
        auto b = latest_departure(p, need(from, "--from"), need(target, "--to"), parse_time(at_s), kind);
        emit(b ? json{{"departure", io::time_to_json(b->value)}, {"attained", b->attained}} : json(nullptr));
      } else if (metric == "distance") {
        auto u = need(from, "--from");
        auto d = temporal_distance(p, u, start, kind);
        json dist;
        for (Vertex v = 0; v < p.n(); ++v) dist[p.nodes[v]] = detail::opt_json(d[v]);
        emit({{"source", from}, {"t", io::time_to_json(start)}, {"distance", dist},
              {"eccentricity", detail::opt_json(eccentricity(p, u, start, kind))}});
      } else if (metric == "disjoint") {
        auto r = disjoint_journeys(p, need(from, "--from"), need(target, "--to"), kind, limit_n ? limit_n : 12);
        emit({{"max_disjoint", r.max_disjoint}, {"min_separator", detail::opt_json(r.min_separator)}});
      } else if (metric == "sweep") {
        json pieces = json::array();
        for (const auto& piece : foremost_tree_sweep(p, need(from, "--from"), {start, end}, kind)) {
          json par;
          for (Vertex v = 0; v < p.n(); ++v) par[p.nodes[v]] = piece.parent[v] ? json(p.nodes[*piece.parent[v]]) : json(nullptr);
          pieces.push_back({{"range", json::array({io::time_to_json(piece.range.start), io::time_to_json(piece.range.end)})}, {"parent", par}});
        }
        emit(pieces);
      }
    } else if (comp_cmd->parsed()) {
      SnapshotSequence s;
      std::vector<Vertex> f;
      if (semaphore) {
        auto base = detail::load_static(c, in);
        s = semaphore_transform(base);
        for (const auto& id : base.nodes) f.push_back(vertex_of(s.nodes, id));
      } else {
        s = to_snapshots(detail::load(c, in));
      }
      if (!focus.empty()) f = detail::parse_nodes(s.nodes, focus);
      json comps = json::array();
      for (const auto& comp : maximal_temporal_components(s, kind, f, limit_n ? limit_n : 15))
        comps.push_back(detail::names_json(s.nodes, comp));
      emit({{"kind", kind_name(kind)}, {"count", comps.size()}, {"components", comps}});
    } else if (mis_cmd->parsed()) {
      auto G = detail::load_static(c, in);
      if (!check_set.empty()) {
        auto set = detail::parse_nodes(G.nodes, check_set);
        emit({{"set", detail::names_json(G.nodes, set)}, {"mis", is_mis(G, set)}, {"robust", is_robust_mis(G, set)}});
      } else {
        auto r = find_robust_mis(G, limit_n ? limit_n : 20);
        emit({{"robust_mis", r ? detail::names_json(G.nodes, *r) : json(nullptr)}});
      }
    } else if (forest_cmd->parsed()) {
      auto s = to_snapshots(detail::load(c, in));
      auto rule = random_merge ? MergeRule::random : MergeRule::smaller_parent;
      ForestRun run;
      if (!schedule_file.empty()) {
        auto doc = detail::parse_json(detail::slurp(schedule_file, in));
        Schedule sch;
        for (const auto& round : doc.at("selections")) {
          std::vector<Edge> sel;
          for (const auto& e : round) sel.push_back(make_edge(s.nodes, e.at(0).get<std::string>(), e.at(1).get<std::string>()));
          sch.push_back(std::move(sel));
        }
        run = run_forest(s, sch, rule, seed);
      } else {
        run = run_forest(s, seed, rule);
      }
      json series = json::array();
      for (const auto& pt : run.series) series.push_back({{"t", pt.t}, {"components", pt.components}, {"trees", pt.trees}});
      emit({{"series", series}, {"average_trees_per_component", run.average_trees_per_component}});
    } else if (relabel_cmd->parsed()) {
      auto s = to_snapshots(detail::load(c, in));
      auto a = parse_algo(algo);
      Vertex special = 0;
      if (needs_special(a)) {
        if (node.empty()) throw input_error(std::string(algo_name(a)) + " needs --node");
        special = vertex_of(s.nodes, node);
      }
      auto sum = simulate_relabel(s, a, special, seed, runs);
      auto cond = check_conditions(s, a, special);
      emit({{"algo", algo_name(a)}, {"runs", sum.runs}, {"success_rate", sum.success_rate}, {"necessary", cond.necessary},
            {"sufficient", cond.sufficient}});
    } else if (windows_cmd->parsed()) {
      auto g = detail::load(c, in);
      auto m = parse_metric(wmetric);
      Vertex u = 0;
      if (m == WindowMetric::ecc) {
        if (node.empty()) throw input_error("ecc needs --node");
        u = vertex_of(nodes_of(g), node);
      }
      auto series = sliding_metric(g, m, parse_time(width_s), parse_time(step_s), u, kind);
      if (c.output == "csv") {
        out << "start,value\n";
        for (const auto& pt : series.points) out << to_string(pt.start) << "," << (pt.value ? to_string(*pt.value) : "none") << "\n";
      } else {
        json pts = json::array();
        for (const auto& pt : series.points) pts.push_back({{"start", io::time_to_json(pt.start)}, {"value", detail::opt_json(pt.value)}});
        emit({{"metric", wmetric}, {"width", io::time_to_json(series.width)}, {"step", io::time_to_json(series.step)}, {"points", pts}});
      }
    }
  } catch (const contract_error& e) {
    err << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const range_error& e) {
    err << "range error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int dispatch(int argc, char** argv) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}

}  // namespace tvg::cli
