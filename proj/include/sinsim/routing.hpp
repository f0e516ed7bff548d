#pragma once

// Minimum propagation-delay routing over snapshot graphs and handover extraction.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sinsim/topology.hpp"

namespace sinsim {

struct DirectedEdge {
  NodeId from;
  NodeId to;

  DirectedEdge reversed() const { return {to, from}; }
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

struct Hop {
  NodeId from;
  NodeId to;
  double delay = 0.0;  // s

  DirectedEdge edge() const { return {from, to}; }
  friend bool operator==(const Hop&, const Hop&) = default;
};

struct RoutePath {
  double snapshot_time = 0.0;
  NodeId src;
  NodeId dst;
  std::vector<Hop> hops;
  double total_delay = 0.0;  // s, sum of hop delays in path order

  std::vector<DirectedEdge> edges() const {
    std::vector<DirectedEdge> out;
    out.reserve(hops.size());
    for (const auto& h : hops) out.push_back(h.edge());
    return out;
  }
  std::vector<NodeId> node_sequence() const {
    std::vector<NodeId> seq{src};
    for (const auto& h : hops) seq.push_back(h.to);
    return seq;
  }
  friend bool operator==(const RoutePath&, const RoutePath&) = default;
};

struct PathDelta {
  std::vector<DirectedEdge> new_hops;      // in order along the next path
  std::vector<DirectedEdge> dropped_hops;  // in order along the previous path
};

struct HandoverEvent {
  double time = 0.0;
  std::vector<DirectedEdge> new_hops;
  std::vector<DirectedEdge> dropped_hops;
};

/// Per-snapshot outcome: a path, or nullopt when the destination is unreachable.
using RouteResult = std::optional<RoutePath>;

struct RouteTimeline {
  std::vector<RouteResult> results;
  std::vector<HandoverEvent> handovers;
};

/// Delay-minimal simple path from src to dst.
///
/// Labels are ordered by (total delay, hop count, node-id sequence), so equal-
/// delay paths resolve to the one with fewer hops and then to the
/// lexicographically smallest id sequence. The order is preserved when a
/// common edge is appended, which keeps label-setting search exact.
/// Returns nullopt when dst is unreachable; throws when an endpoint is not in
/// the graph.
inline RouteResult shortest_delay_path(const SnapshotGraph& graph, const NodeId& src,
                                       const NodeId& dst) {
  // graph.nodes is sorted, so index order equals id order.
  const auto index_of = [&](const NodeId& id) -> std::size_t {
    const auto it = std::lower_bound(graph.nodes.begin(), graph.nodes.end(), id);
    if (it == graph.nodes.end() || *it != id) {
      throw std::invalid_argument("node '" + id + "' is not in the snapshot");
    }
    return static_cast<std::size_t>(it - graph.nodes.begin());
  };
  const std::size_t s = index_of(src);
  const std::size_t d = index_of(dst);
  if (s == d) return RoutePath{graph.time, src, dst, {}, 0.0};

  const std::size_t n = graph.nodes.size();
  struct Arc {
    std::size_t to;
    double delay;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (const auto& l : graph.links) {
    const std::size_t a = index_of(l.node_a);
    const std::size_t b = index_of(l.node_b);
    adj[a].push_back({b, l.delay});
    adj[b].push_back({a, l.delay});
  }

  struct Label {
    double delay = std::numeric_limits<double>::infinity();
    std::size_t hops = 0;
    std::vector<std::size_t> seq;

    bool operator<(const Label& o) const {
      return std::tie(delay, hops, seq) < std::tie(o.delay, o.hops, o.seq);
    }
  };
  std::vector<std::optional<Label>> best(n);
  std::vector<bool> settled(n, false);

  using Entry = std::pair<Label, std::size_t>;
  const auto worse = [](const Entry& x, const Entry& y) { return y.first < x.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  best[s] = Label{0.0, 0, {s}};
  queue.push({*best[s], s});
  while (!queue.empty()) {
    auto [label, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    if (u == d) break;
    for (const auto& arc : adj[u]) {
      if (settled[arc.to]) continue;
      Label cand{label.delay + arc.delay, label.hops + 1, label.seq};
      cand.seq.push_back(arc.to);
      if (!best[arc.to] || cand < *best[arc.to]) {
        best[arc.to] = cand;
        queue.push({std::move(cand), arc.to});
      }
    }
  }
  if (!settled[d]) return std::nullopt;

  // Re-read delays from the adjacency so each hop carries its link's delay.
  RoutePath path{graph.time, src, dst, {}, 0.0};
  const auto& seq = best[d]->seq;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    double hop_delay = std::numeric_limits<double>::infinity();
    for (const auto& arc : adj[seq[i]]) {
      if (arc.to == seq[i + 1]) hop_delay = std::min(hop_delay, arc.delay);
    }
    path.hops.push_back({graph.nodes[seq[i]], graph.nodes[seq[i + 1]], hop_delay});
    path.total_delay += hop_delay;
  }
  return path;
}

/// Directed edges entering and leaving service between two paths of one flow.
inline PathDelta path_delta(const RoutePath& prev, const RoutePath& next) {
  const auto prev_edges = prev.edges();
  const auto next_edges = next.edges();
  const auto contains = [](const std::vector<DirectedEdge>& v, const DirectedEdge& e) {
    return std::find(v.begin(), v.end(), e) != v.end();
  };
  PathDelta delta;
  for (const auto& e : next_edges) {
    if (!contains(prev_edges, e)) delta.new_hops.push_back(e);
  }
  for (const auto& e : prev_edges) {
    if (!contains(next_edges, e)) delta.dropped_hops.push_back(e);
  }
  return delta;
}

/// Routes one flow across a snapshot sequence.
///
/// A handover is recorded when the hop set differs from the previous
/// snapshot's path. After a NoRoute snapshot (or at the first reachable
/// snapshot) every hop of the new path counts as new, and the dropped hops are
/// those of the last available path that the new path no longer uses.
/// Transitions into NoRoute emit nothing.
inline RouteTimeline route_timeline(const std::vector<SnapshotGraph>& snapshots,
                                    const NodeId& src, const NodeId& dst) {
  if (snapshots.empty()) throw std::invalid_argument("route_timeline: no snapshots");
  RouteTimeline tl;
  std::optional<RoutePath> last_available;
  bool previous_reachable = false;
  for (const auto& g : snapshots) {
    RouteResult r = shortest_delay_path(g, src, dst);
    if (r) {
      if (!previous_reachable) {
        HandoverEvent ev{g.time, r->edges(), {}};
        if (last_available) ev.dropped_hops = path_delta(*r, *last_available).new_hops;
        if (!ev.new_hops.empty() || !ev.dropped_hops.empty()) tl.handovers.push_back(std::move(ev));
      } else {
        PathDelta delta = path_delta(*last_available, *r);
        if (!delta.new_hops.empty() || !delta.dropped_hops.empty()) {
          tl.handovers.push_back({g.time, std::move(delta.new_hops), std::move(delta.dropped_hops)});
        }
      }
      last_available = r;
    }
    previous_reachable = r.has_value();
    tl.results.push_back(std::move(r));
  }
  return tl;
}

}  // namespace sinsim
