#pragma once

#include "tvg/journeys.hpp"

namespace tvg {

enum class WindowMetric { tdiam, ecc, tc };

inline WindowMetric parse_metric(std::string_view s) {
  if (s == "tdiam") return WindowMetric::tdiam;
  if (s == "ecc") return WindowMetric::ecc;
  if (s == "tc") return WindowMetric::tc;
  throw input_error("unknown window metric '" + std::string(s) + "'");
}

namespace detail {

/// Time needed to reach each node from u starting at the window opening. A
/// discrete window counts the snapshots used (arrival index - start + 1).
inline std::vector<std::optional<Time>> window_reach(const Presence& p, Vertex u, Kind kind) {
  auto start = p.lifetime.start;
  auto r = earliest_arrival(p, u, start, kind);
  std::vector<std::optional<Time>> d(p.n());
  for (Vertex v = 0; v < p.n(); ++v)
    if (r.arrival[v]) d[v] = v == u ? Time(0) : *r.arrival[v] - start + (p.discrete ? 1 : 0);
  return d;
}

}  // namespace detail

/// Metric of the whole trace seen as one window. tdiam and ecc are nullopt
/// when some node is unreachable; tc is 1 or 0.
inline std::optional<Time> window_metric(const TemporalGraph& g, WindowMetric metric, Vertex u = 0, Kind kind = Kind::strict) {
  auto p = presence(g);
  if (metric == WindowMetric::ecc) {
    if (u >= p.n()) throw input_error("unknown node for eccentricity");
    Time worst(0);
    for (const auto& d : detail::window_reach(p, u, kind)) {
      if (!d) return std::nullopt;
      worst = std::max(worst, *d);
    }
    return worst;
  }
  Time worst(0);
  for (Vertex x = 0; x < p.n(); ++x)
    for (const auto& d : detail::window_reach(p, x, kind)) {
      if (!d) return metric == WindowMetric::tc ? std::optional(Time(0)) : std::nullopt;
      worst = std::max(worst, *d);
    }
  return metric == WindowMetric::tc ? Time(1) : worst;
}

struct WindowPoint {
  Time start{0};
  std::optional<Time> value;
};

struct WindowSeries {
  WindowMetric metric = WindowMetric::tdiam;
  Time width{0};
  Time step{0};
  std::vector<WindowPoint> points;
};

/// Metric on every temporal subgraph [a, a+W) for a = lifetime start + k*step;
/// windows extending past the lifetime are dropped.
inline WindowSeries sliding_metric(const TemporalGraph& g, WindowMetric metric, const Time& width, const Time& step, Vertex u = 0,
                                   Kind kind = Kind::strict) {
  Interval life = is_discrete(g) ? Interval{Time(0), Time(static_cast<std::int64_t>(as_snapshots(g).length()))}
                                 : std::get<IntervalGraph>(g).lifetime();
  if (width <= Time(0) || width > life.end - life.start) throw range_error("window width must lie in (0, lifetime span]");
  if (step <= Time(0)) throw range_error("window step must be positive");
  if (is_discrete(g) && (!is_integral(width) || !is_integral(step))) throw range_error("discrete windows need integral width and step");
  WindowSeries out{metric, width, step, {}};
  for (auto a = life.start; a + width <= life.end; a += step)
    out.points.push_back({a, window_metric(temporal_subgraph(g, {a, a + width}), metric, u, kind)});
  return out;
}

}  // namespace tvg
