#pragma once

#include "tvg/closure.hpp"

#include <concepts>
#include <limits>

namespace tvg {

/// shrink: a passing window's sub-windows pass (extremum = longest length).
/// grow: a passing window's super-windows pass (extremum = shortest length).
enum class Direction { shrink, grow };

template <class A>
concept WindowAlgebra = requires(const A& a, const typename A::element& x, std::size_t i, const EdgeSet& es) {
  { a.size() } -> std::convertible_to<std::size_t>;
  { a.lift(i) } -> std::same_as<typename A::element>;
  { a.lift_edges(es, std::int64_t{0}) } -> std::same_as<typename A::element>;
  { a.compose(x, x) } -> std::same_as<typename A::element>;
  { a.test(x) } -> std::same_as<bool>;
  { A::direction } -> std::convertible_to<Direction>;
};

struct Ops {
  std::size_t compose = 0;
  std::size_t test = 0;
  std::size_t total() const { return compose + test; }
};

struct HierarchyResult {
  std::optional<std::size_t> value;
  Ops ops;
};

struct Decision {
  bool value = false;
  Ops ops;
};

namespace detail {

template <WindowAlgebra A>
struct Counted {
  const A& alg;
  Ops ops;
  typename A::element compose(const typename A::element& x, const typename A::element& y) {
    ++ops.compose;
    return alg.compose(x, y);
  }
  bool test(const typename A::element& x) {
    ++ops.test;
    return alg.test(x);
  }
};

}  // namespace detail

/// FIFO of window elements with amortized O(1) aggregate: a back stack with a
/// running aggregate and a front stack of suffix aggregates rebuilt on demand.
template <WindowAlgebra A>
class WindowQueue {
 public:
  using element = typename A::element;
  explicit WindowQueue(detail::Counted<A>& c) : c_(c) {}

  bool empty() const { return front_.empty() && back_.empty(); }
  std::size_t size() const { return front_.size() + back_.size(); }

  void push(element x) {
    back_agg_ = back_.empty() ? x : c_.compose(*back_agg_, x);
    back_.push_back(std::move(x));
  }

  void pop() {
    if (front_.empty()) {
      for (auto it = back_.rbegin(); it != back_.rend(); ++it)
        front_.push_back(front_.empty() ? *it : c_.compose(*it, front_.back()));
      back_.clear();
      back_agg_.reset();
    }
    front_.pop_back();
  }

  /// Aggregate of the whole queue (must be non-empty).
  element aggregate() {
    if (front_.empty()) return *back_agg_;
    if (back_.empty()) return front_.back();
    return c_.compose(front_.back(), *back_agg_);
  }

 private:
  detail::Counted<A>& c_;
  std::vector<element> front_;
  std::vector<element> back_;
  std::optional<element> back_agg_;
};

/// Whether every length-L window passes. Windows are assembled from the
/// suffix ladder of one block and the prefix ladder of the next, so each
/// costs at most one composition and one test.
template <WindowAlgebra A>
Decision decide(const A& alg, std::size_t L) {
  auto d = alg.size();
  if (L < 1 || L > d) throw range_error("window length must lie in [1, " + std::to_string(d) + "]");
  detail::Counted<A> c{alg, {}};
  std::vector<std::optional<typename A::element>> suf(d), pre(d);
  for (std::size_t b = 0; b < d; b += L) {
    auto e = std::min(d, b + L);
    pre[b] = alg.lift(b);
    for (auto i = b + 1; i < e; ++i) pre[i] = c.compose(*pre[i - 1], alg.lift(i));
    suf[e - 1] = alg.lift(e - 1);
    for (auto i = e - 1; i-- > b;) suf[i] = c.compose(alg.lift(i), *suf[i + 1]);
  }
  for (std::size_t i = 0; i + L <= d; ++i) {
    bool ok = i % L == 0 ? c.test(*suf[i]) : c.test(c.compose(*suf[i], *pre[i + L - 1]));
    if (!ok) return {false, c.ops};
  }
  return {true, c.ops};
}

/// Extremal window length by a two-pointer walk over a window queue.
/// shrink: largest r such that all length-r windows pass.
/// grow: smallest r such that all length-r windows pass.
template <WindowAlgebra A>
HierarchyResult extremal(const A& alg) {
  auto d = alg.size();
  detail::Counted<A> c{alg, {}};
  WindowQueue<A> q(c);
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  HierarchyResult res;
  if constexpr (A::direction == Direction::shrink) {
    // reach[i]: length of the longest passing window starting at i
    std::vector<std::size_t> reach(d);
    std::size_t j = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (j < i) j = i;
      while (j < d) {
        auto x = alg.lift(j);
        auto candidate = q.empty() ? x : c.compose(q.aggregate(), x);
        if (!c.test(candidate)) break;
        q.push(std::move(x));
        ++j;
      }
      reach[i] = j - i;
      if (!q.empty()) q.pop();
    }
    std::size_t low = inf;
    std::optional<std::size_t> best;
    // all windows of length L start in [0, d-L]; scan L downwards so the
    // admissible start range grows one index at a time
    for (std::size_t L = d; L >= 1; --L) {
      low = std::min(low, reach[d - L]);
      if (low >= L) {
        best = L;
        break;
      }
    }
    res.value = best;
  } else {
    // need[i]: length of the shortest passing window starting at i
    std::vector<std::size_t> need(d, inf);
    std::size_t j = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (j < i) j = i;
      bool ok = false;
      while (true) {
        if (!q.empty() && c.test(q.aggregate())) {
          ok = true;
          break;
        }
        if (j == d) break;
        q.push(alg.lift(j));
        ++j;
      }
      if (!ok) break;  // ends are monotone: later starts cannot pass either
      need[i] = j - i;
      q.pop();
    }
    // windows of length L start in [0, d-L]; compare against prefix maxima
    std::vector<std::size_t> pmax(d);
    for (std::size_t i = 0; i < d; ++i) pmax[i] = std::max(i ? pmax[i - 1] : 0, need[i]);
    for (std::size_t L = 1; L <= d; ++L)
      if (pmax[d - L] <= L) {
        res.value = L;
        break;
      }
  }
  res.ops = c.ops;
  return res;
}

/// Decision over a growing sequence for a fixed window length: each appended
/// snapshot costs amortized O(1) compositions and one test.
template <WindowAlgebra A>
class OnlineDecider {
 public:
  OnlineDecider(const A& alg, std::size_t L) : alg_(alg), c_{alg, {}}, q_(c_), L_(L) {
    if (L < 1) throw range_error("window length must be positive");
  }

  /// Appends a snapshot; returns whether every complete window so far passes.
  bool push(const EdgeSet& snapshot) {
    q_.push(alg_.lift_edges(snapshot, next_++));
    if (q_.size() > L_) q_.pop();
    if (q_.size() == L_ && ok_ && !c_.test(q_.aggregate())) ok_ = false;
    return ok_;
  }
  bool ok() const { return ok_; }
  const Ops& ops() const { return c_.ops; }

 private:
  const A& alg_;
  detail::Counted<A> c_;
  WindowQueue<A> q_;
  std::size_t L_;
  std::int64_t next_ = 0;
  bool ok_ = true;
};

/// Intersection of snapshots; passes when the stable subgraph is connected.
struct TIntervalAlgebra {
  using element = EdgeSet;
  static constexpr Direction direction = Direction::shrink;
  const SnapshotSequence* seq;

  std::size_t size() const { return seq->length(); }
  element lift(std::size_t i) const { return seq->snapshots[i]; }
  element lift_edges(const EdgeSet& es, std::int64_t) const { return es; }
  element compose(const element& a, const element& b) const { return set_intersection(a, b); }
  bool test(const element& e) const { return is_connected(seq->n(), e); }
};

/// Union of snapshots; passes when it equals the footprint.
struct FootprintAlgebra {
  using element = EdgeSet;
  static constexpr Direction direction = Direction::grow;
  const SnapshotSequence* seq;
  EdgeSet footprint;

  std::size_t size() const { return seq->length(); }
  element lift(std::size_t i) const { return seq->snapshots[i]; }
  element lift_edges(const EdgeSet& es, std::int64_t) const { return es; }
  element compose(const element& a, const element& b) const { return set_union(a, b); }
  bool test(const element& e) const { return e.size() == footprint.size(); }
};

/// Reachability matrices with the diagonal set; relational join composes
/// consecutive windows; passes when complete.
struct TDiameterAlgebra {
  using element = std::vector<Bits>;
  static constexpr Direction direction = Direction::grow;
  const SnapshotSequence* seq;
  Kind kind = Kind::strict;

  std::size_t size() const { return seq->length(); }
  element lift_edges(const EdgeSet& snap, std::int64_t) const {
    auto n = seq->n();
    element m(n, Bits(n));
    for (Vertex v = 0; v < n; ++v) m[v].set(v);
    for (auto e : kind == Kind::strict ? snap : component_cliques(n, snap)) {
      m[e.u].set(e.v);
      m[e.v].set(e.u);
    }
    return m;
  }
  element lift(std::size_t i) const { return lift_edges(seq->snapshots[i], static_cast<std::int64_t>(i)); }
  element compose(const element& a, const element& b) const {
    auto n = a.size();
    element r(n, Bits(n));
    for (Vertex u = 0; u < n; ++u)
      for (auto w = a[u].find_first(); w != Bits::npos; w = a[u].find_next(w)) r[u] |= b[w];
    return r;
  }
  bool test(const element& e) const {
    for (const auto& row : e)
      if (!row.all()) return false;
    return true;
  }
};

/// Round-trip closures composed by the arrival/departure-aware concatenation.
struct RoundTripAlgebra {
  using element = RoundTripClosure;
  static constexpr Direction direction = Direction::grow;
  const SnapshotSequence* seq;
  Kind kind = Kind::strict;

  std::size_t size() const { return seq->length(); }
  element lift_edges(const EdgeSet& snap, std::int64_t i) const {
    auto n = seq->n();
    RoundTripClosure r{n, i, i + 1, std::vector<std::optional<std::int64_t>>(n * n),
                       std::vector<std::optional<std::int64_t>>(n * n)};
    for (auto e : kind == Kind::strict ? snap : component_cliques(n, snap)) {
      r.ea[e.u * n + e.v] = r.ea[e.v * n + e.u] = i;
      r.ld[e.u * n + e.v] = r.ld[e.v * n + e.u] = i;
    }
    return r;
  }
  element lift(std::size_t i) const { return lift_edges(seq->snapshots[i], static_cast<std::int64_t>(i)); }
  element compose(const element& a, const element& b) const { return concat_roundtrip(a, b); }
  bool test(const element& e) const { return roundtrip_complete(e, kind); }
};

inline TIntervalAlgebra tinterval(const SnapshotSequence& s) { return {&s}; }
inline FootprintAlgebra footprint_realization(const SnapshotSequence& s) { return {&s, footprint(s).edges}; }
inline TDiameterAlgebra tdiameter(const SnapshotSequence& s, Kind k = Kind::strict) { return {&s, k}; }
inline RoundTripAlgebra rt_tdiameter(const SnapshotSequence& s, Kind k = Kind::strict) { return {&s, k}; }

}  // namespace tvg
