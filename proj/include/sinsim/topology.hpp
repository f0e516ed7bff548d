#pragma once

// Snapshot division: static graphs of the time-varying network.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "sinsim/constants.hpp"
#include "sinsim/scenario_config.hpp"
#include "sinsim/visibility.hpp"

namespace sinsim {

enum class LinkClass { ISL, IOL, access, feeder };

inline std::string_view to_string(LinkClass c) {
  switch (c) {
    case LinkClass::ISL: return "ISL";
    case LinkClass::IOL: return "IOL";
    case LinkClass::access: return "access";
    case LinkClass::feeder: return "feeder";
  }
  return "?";
}

inline LinkClass classify_link(const NodeRecord& a, const NodeRecord& b) {
  if (a.layer == Layer::ground || b.layer == Layer::ground) return LinkClass::feeder;
  const auto terminal_provider = [](const NodeRecord& x, const NodeRecord& y) {
    return x.kind == NodeKind::nanosat_terminal && y.kind == NodeKind::provider_satellite;
  };
  if (terminal_provider(a, b) || terminal_provider(b, a)) return LinkClass::access;
  return a.layer == b.layer ? LinkClass::ISL : LinkClass::IOL;
}

/// Undirected link; endpoints stored with node_a < node_b.
struct LinkRecord {
  NodeId node_a;
  NodeId node_b;
  LinkClass link_class = LinkClass::ISL;
  double range = 0.0;  // km
  double delay = 0.0;  // s
  std::optional<double> bandwidth_mbps;

  std::pair<const NodeId&, const NodeId&> key() const { return {node_a, node_b}; }
  friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
};

struct SnapshotGraph {
  double time = 0.0;
  std::vector<NodeId> nodes;
  std::vector<LinkRecord> links;  // sorted by (node_a, node_b)

  friend bool operator==(const SnapshotGraph&, const SnapshotGraph&) = default;
};

struct SnapshotDiff {
  std::vector<LinkRecord> links_up;
  std::vector<LinkRecord> links_down;
};

inline double propagation_delay(double range_km) { return range_km / kSpeedOfLightKmPerS; }

/// Node pairs that may carry a link, with the rule or schedule that governs
/// them. Computed once per scenario and reused for every snapshot.
class LinkCandidates {
 public:
  struct Pair {
    std::size_t a = 0;  // indices into ScenarioConfig::nodes, nodes[a].id < nodes[b].id
    std::size_t b = 0;
    const LinkRule* rule = nullptr;
    const LinkSchedule* schedule = nullptr;
    VisibilityCriteria criteria;
  };

  explicit LinkCandidates(const ScenarioConfig& cfg) {
    const auto& nodes = cfg.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        std::size_t a = i;
        std::size_t b = j;
        if (nodes[b].id < nodes[a].id) std::swap(a, b);
        Pair p;
        p.a = a;
        p.b = b;
        for (const auto& s : cfg.links.schedules) {
          if (s.covers(nodes[a].id, nodes[b].id)) {
            p.schedule = &s;
            break;
          }
        }
        for (const auto& r : cfg.links.rules) {
          if (r.matches(nodes[a], nodes[b])) {
            p.rule = &r;
            break;
          }
        }
        if (!p.schedule && !p.rule) continue;
        p.criteria = pair_criteria(cfg.links, nodes[a], nodes[b], p.rule);
        pairs_.push_back(p);
      }
    }
  }

  const std::vector<Pair>& pairs() const { return pairs_; }

 private:
  std::vector<Pair> pairs_;
};

namespace detail {

inline SnapshotGraph build_snapshot(const ScenarioConfig& cfg, const LinkCandidates& candidates,
                                    double t) {
  SnapshotGraph g;
  g.time = t;
  std::vector<StateVector> states;
  states.reserve(cfg.nodes.size());
  for (const auto& n : cfg.nodes) {
    g.nodes.push_back(n.id);
    states.push_back(state_at(n.motion, t));
  }
  std::sort(g.nodes.begin(), g.nodes.end());

  for (const auto& p : candidates.pairs()) {
    const auto& na = cfg.nodes[p.a];
    const auto& nb = cfg.nodes[p.b];
    const bool up = p.schedule
                        ? p.schedule->up(t)
                        : is_visible(states[p.a], is_ground(na.motion), states[p.b],
                                     is_ground(nb.motion), p.criteria);
    if (!up) continue;
    const double range = range_between(states[p.a], states[p.b]);
    LinkRecord link{na.id, nb.id, classify_link(na, nb), range, propagation_delay(range),
                    p.rule ? p.rule->bandwidth_mbps : std::nullopt};
    g.links.push_back(std::move(link));
  }
  std::sort(g.links.begin(), g.links.end(),
            [](const LinkRecord& x, const LinkRecord& y) { return x.key() < y.key(); });
  return g;
}

}  // namespace detail

/// Static topology at instant t: every eligible pair that is visible (or
/// scheduled up) becomes a link annotated with class and propagation delay.
inline SnapshotGraph build_snapshot(const ScenarioConfig& cfg, double t) {
  return detail::build_snapshot(cfg, LinkCandidates(cfg), t);
}

inline std::vector<SnapshotGraph> snapshot_sequence(const ScenarioConfig& cfg) {
  if (!(cfg.horizon.duration() > 0.0)) throw std::invalid_argument("empty horizon");
  const LinkCandidates candidates(cfg);
  std::vector<SnapshotGraph> out;
  for (double t : sample_times(cfg.horizon, cfg.step)) {
    out.push_back(detail::build_snapshot(cfg, candidates, t));
  }
  return out;
}

/// Links are compared by endpoint pair only; delay drift is not a change.
inline SnapshotDiff diff_snapshots(const SnapshotGraph& prev, const SnapshotGraph& next) {
  const auto less = [](const LinkRecord& x, const LinkRecord& y) { return x.key() < y.key(); };
  SnapshotDiff d;
  std::set_difference(next.links.begin(), next.links.end(), prev.links.begin(), prev.links.end(),
                      std::back_inserter(d.links_up), less);
  std::set_difference(prev.links.begin(), prev.links.end(), next.links.begin(), next.links.end(),
                      std::back_inserter(d.links_down), less);
  return d;
}

}  // namespace sinsim
