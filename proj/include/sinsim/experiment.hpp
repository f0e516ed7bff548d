#pragma once

// Experiment orchestration: the connectivity study (ranges, windows,
// coverage) and the SDN study (routes, handovers, controller message load).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sinsim/routing.hpp"
#include "sinsim/scenario_config.hpp"
#include "sinsim/sdn.hpp"
#include "sinsim/topology.hpp"
#include "sinsim/visibility.hpp"

namespace sinsim {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunMetadata {
  std::string study;
  std::string scenario_name;
  std::uint64_t scenario_hash = 0;
  std::string tool_version = kToolVersion;
  TimeSpan horizon;
  double step = 0.0;
};

/// Range/visibility trace and windows for one explicitly requested node pair.
struct PairReport {
  NodeId node_a;
  NodeId node_b;
  std::vector<VisibilitySample> series;
  std::vector<ContactWindow> windows;
  double coverage = 0.0;
  double min_range = 0.0;
  double max_range = 0.0;

  double range_spread() const { return max_range - min_range; }
};

/// One terminal against every satellite of one provider constellation.
struct GroupCoverage {
  NodeId terminal;
  std::string group;
  std::size_t satellites = 0;
  std::vector<ContactWindow> windows;  // per satellite, node_b = satellite id
  std::vector<ContactWindow> union_windows;
  std::optional<double> median_window;
  double coverage = 0.0;  // of the union
};

struct FlowReport {
  FlowSpec flow;
  RouteTimeline timeline;
  MessageLedger ledger;
  std::vector<LoadBin> load;
};

struct ExperimentReport {
  RunMetadata meta;
  std::vector<PairReport> pairs;
  std::vector<GroupCoverage> coverage;
  std::vector<FlowReport> flows;
  std::vector<SnapshotGraph> snapshots;
  MessageLedger ledger;  // all flows, time-merged
  std::vector<LoadBin> load;
  int messages_per_hop = kDefaultMessagesPerHop;
  bool rule_removal = false;
};

namespace detail {

inline RunMetadata metadata_for(const ScenarioConfig& cfg, std::string study) {
  return {std::move(study), cfg.name, cfg.source_hash, kToolVersion, cfg.horizon, cfg.step};
}

/// Visibility of one node pair at the given instants; a schedule covering the
/// pair overrides geometry, exactly as in snapshot construction.
inline std::vector<VisibilitySample> pair_series(const ScenarioConfig& cfg, const NodeRecord& a,
                                                 const std::vector<StateVector>& a_states,
                                                 const NodeRecord& b,
                                                 const std::vector<double>& times) {
  const LinkSchedule* schedule = nullptr;
  for (const auto& s : cfg.links.schedules) {
    if (s.covers(a.id, b.id)) schedule = &s;
  }
  const VisibilityCriteria criteria = pair_criteria(cfg.links, a, b);
  const bool a_ground = is_ground(a.motion);
  const bool b_ground = is_ground(b.motion);
  std::vector<VisibilitySample> series;
  series.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const StateVector sb = state_at(b.motion, times[k]);
    const bool visible = schedule ? schedule->up(times[k])
                                  : is_visible(a_states[k], a_ground, sb, b_ground, criteria);
    series.push_back({times[k], range_between(a_states[k], sb), visible});
  }
  return series;
}

inline std::vector<StateVector> states_over(const NodeRecord& n, const std::vector<double>& times) {
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(state_at(n.motion, t));
  return out;
}

}  // namespace detail

/// Throws std::logic_error when derived quantities disagree with the data
/// they were derived from.
inline void check_consistency(const ExperimentReport& r) {
  const auto fail = [](const std::string& what) {
    throw std::logic_error("report consistency check failed: " + what);
  };
  for (const auto& p : r.pairs) {
    if (p.coverage != coverage_fraction(p.windows, r.meta.horizon)) {
      fail("coverage of " + p.node_a + "/" + p.node_b);
    }
  }
  for (const auto& g : r.coverage) {
    if (g.coverage != coverage_fraction(g.union_windows, r.meta.horizon)) {
      fail("union coverage of " + g.terminal + "/" + g.group);
    }
    if (g.median_window != median_duration(g.windows)) fail("median of " + g.group);
  }
  std::size_t ledger_total = 0;
  for (const auto& f : r.flows) {
    std::size_t expected = 0;
    for (const auto& h : f.timeline.handovers) {
      expected += flow_setup_messages(h.new_hops.size(), f.flow.bidirectional,
                                      r.messages_per_hop);
      if (r.rule_removal) expected += h.dropped_hops.size() * (f.flow.bidirectional ? 2U : 1U);
    }
    if (expected != f.ledger.total()) fail("ledger total of " + f.flow.src + "->" + f.flow.dst);
    std::size_t load_sum = 0;
    for (const auto& b : f.load) load_sum += b.messages;
    if (load_sum != f.ledger.total()) fail("load series of " + f.flow.src + "->" + f.flow.dst);
    if (!installs_paired_with_requests(f.ledger)) {
      fail("unpaired install in " + f.flow.src + "->" + f.flow.dst);
    }
    ledger_total += f.ledger.total();
  }
  if (ledger_total != r.ledger.total()) fail("merged ledger size");
  std::size_t total_load = 0;
  for (const auto& b : r.load) total_load += b.messages;
  if (total_load != r.ledger.total()) fail("merged load series");
}

inline ExperimentReport run_connectivity_study(const ScenarioConfig& cfg) {
  validate(cfg);
  if (cfg.nodes.size() < 2) throw std::invalid_argument("connectivity study needs >= 2 nodes");
  ExperimentReport report;
  report.meta = detail::metadata_for(cfg, "connectivity");
  const auto times = sample_times(cfg.horizon, cfg.step);

  std::vector<std::pair<NodeId, NodeId>> seen_pairs;
  for (const auto& f : cfg.flows) {
    if (f.src == f.dst) continue;
    const std::pair<NodeId, NodeId> key = std::minmax(f.src, f.dst);
    if (std::find(seen_pairs.begin(), seen_pairs.end(), key) != seen_pairs.end()) continue;
    seen_pairs.push_back(key);
    const auto& a = cfg.node(f.src);
    const auto& b = cfg.node(f.dst);
    PairReport p;
    p.node_a = a.id;
    p.node_b = b.id;
    p.series = detail::pair_series(cfg, a, detail::states_over(a, times), b, times);
    p.windows = contact_windows(p.series, a.id, b.id);
    p.coverage = coverage_fraction(p.windows, cfg.horizon);
    const auto [lo, hi] = std::minmax_element(
        p.series.begin(), p.series.end(),
        [](const VisibilitySample& x, const VisibilitySample& y) { return x.range < y.range; });
    p.min_range = lo->range;
    p.max_range = hi->range;
    report.pairs.push_back(std::move(p));
  }

  // Provider groups in order of first appearance.
  std::vector<std::string> groups;
  std::map<std::string, std::vector<const NodeRecord*>> members;
  for (const auto& n : cfg.nodes) {
    if (n.kind != NodeKind::provider_satellite) continue;
    if (!members.contains(n.group)) groups.push_back(n.group);
    members[n.group].push_back(&n);
  }
  for (const auto& terminal : cfg.nodes) {
    if (terminal.kind != NodeKind::nanosat_terminal) continue;
    const auto terminal_states = detail::states_over(terminal, times);
    for (const auto& group : groups) {
      GroupCoverage g;
      g.terminal = terminal.id;
      g.group = group;
      g.satellites = members[group].size();
      for (const NodeRecord* sat : members[group]) {
        const auto series = detail::pair_series(cfg, terminal, terminal_states, *sat, times);
        const auto w = contact_windows(series, terminal.id, sat->id);
        g.windows.insert(g.windows.end(), w.begin(), w.end());
      }
      g.union_windows = union_windows(g.windows, terminal.id, group);
      g.median_window = median_duration(g.windows);
      g.coverage = coverage_fraction(g.union_windows, cfg.horizon);
      report.coverage.push_back(std::move(g));
    }
  }
  check_consistency(report);
  return report;
}

inline ExperimentReport run_sdn_study(const ScenarioConfig& cfg) {
  validate(cfg);
  if (cfg.flows.empty()) throw std::invalid_argument("sdn study needs at least one flow");
  ExperimentReport report;
  report.meta = detail::metadata_for(cfg, "sdn");
  report.rule_removal = cfg.sdn.rule_removal;
  report.messages_per_hop = cfg.sdn.messages_per_hop;
  report.snapshots = snapshot_sequence(cfg);

  const ControlPlaneOptions options{cfg.sdn.messages_per_hop, cfg.sdn.rule_removal};
  std::vector<MessageLedger> ledgers;
  for (const auto& flow : cfg.flows) {
    FlowReport fr;
    fr.flow = flow;
    fr.timeline = route_timeline(report.snapshots, flow.src, flow.dst);
    fr.ledger = simulate_control_plane(fr.timeline.handovers, {flow.src, flow.dst},
                                       flow.bidirectional, options);
    if (cfg.sdn.controller) {
      fr.ledger.controller = cfg.sdn.controller;
      fr.ledger.controller_layer = cfg.node(*cfg.sdn.controller).layer;
    }
    fr.load = message_load_series(fr.ledger, cfg.sdn.bin, cfg.horizon);
    ledgers.push_back(fr.ledger);
    report.flows.push_back(std::move(fr));
  }
  report.ledger = merge_ledgers(ledgers);
  report.load = message_load_series(report.ledger, cfg.sdn.bin, cfg.horizon);
  check_consistency(report);
  return report;
}

}  // namespace sinsim
