#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sinsim/constants.hpp"
#include "sinsim/motion.hpp"
#include "sinsim/visibility.hpp"

namespace sinsim {

enum class NodeKind { nanosat_terminal, provider_satellite, ground_station, controller_host };
enum class Layer { LEO, MEO, GEO, ground };

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::nanosat_terminal: return "nanosat_terminal";
    case NodeKind::provider_satellite: return "provider_satellite";
    case NodeKind::ground_station: return "ground_station";
    case NodeKind::controller_host: return "controller_host";
  }
  return "?";
}

inline std::string_view to_string(Layer l) {
  switch (l) {
    case Layer::LEO: return "LEO";
    case Layer::MEO: return "MEO";
    case Layer::GEO: return "GEO";
    case Layer::ground: return "ground";
  }
  return "?";
}

inline std::optional<NodeKind> parse_node_kind(std::string_view s) {
  for (auto k : {NodeKind::nanosat_terminal, NodeKind::provider_satellite,
                 NodeKind::ground_station, NodeKind::controller_host}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// LEO below 2000 km, GEO within ±500 km of 35786 km, MEO otherwise.
inline Layer classify_layer(const Motion& motion) {
  if (is_ground(motion)) return Layer::ground;
  const double h = nominal_altitude(motion);
  if (h < kLeoCeilingKm) return Layer::LEO;
  if (std::abs(h - kGeoAltitudeKm) <= kGeoBandKm) return Layer::GEO;
  return Layer::MEO;
}

struct NodeRecord {
  NodeId id;
  NodeKind kind = NodeKind::provider_satellite;
  Layer layer = Layer::LEO;
  Motion motion;
  // Constellation/provider name; defaults to the node id.
  std::string group;
  // Beam reach: links touching this node are cut beyond this range.
  std::optional<double> max_range;
};

/// Eligibility of an unordered node-kind pair for links.
struct LinkRule {
  NodeKind kind_a = NodeKind::provider_satellite;
  NodeKind kind_b = NodeKind::provider_satellite;
  bool same_group = false;
  std::optional<double> max_range;
  std::optional<double> bandwidth_mbps;

  bool matches(const NodeRecord& a, const NodeRecord& b) const {
    const bool kinds = (a.kind == kind_a && b.kind == kind_b) ||
                       (a.kind == kind_b && b.kind == kind_a);
    return kinds && (!same_group || a.group == b.group);
  }
};

/// Scripted availability for one node pair, overriding geometry:
/// up iff ((t - phase) mod period) < on.
struct LinkSchedule {
  NodeId node_a;
  NodeId node_b;
  double period = 0.0;
  double on = 0.0;
  double phase = 0.0;

  bool up(double t) const {
    double x = std::fmod(t - phase, period);
    if (x < 0.0) x += period;
    return x < on;
  }
  bool covers(const NodeId& a, const NodeId& b) const {
    return (a == node_a && b == node_b) || (a == node_b && b == node_a);
  }
};

struct LinkPolicy {
  std::vector<LinkRule> rules;
  std::vector<LinkSchedule> schedules;
  double occlusion_margin = kDefaultGrazingMarginKm;
  std::optional<double> max_range;
  double elevation_mask = deg_to_rad(kDefaultElevationMaskDeg);
};

struct FlowSpec {
  NodeId src;
  NodeId dst;
  bool bidirectional = true;
  // Traffic label (e.g. "data", "ttc"); carried through, not used for routing.
  std::string label = "data";
};

struct SdnSettings {
  int messages_per_hop = 4;
  double bin = 300.0;
  bool rule_removal = false;
  std::optional<NodeId> controller;
};

struct ScenarioConfig {
  std::string name;
  TimeSpan horizon;
  double step = 10.0;
  std::vector<NodeRecord> nodes;
  LinkPolicy links;
  std::vector<FlowSpec> flows;
  SdnSettings sdn;
  std::uint64_t source_hash = 0;  // FNV-1a of the scenario document

  std::optional<std::size_t> index_of(const NodeId& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    return std::nullopt;
  }

  const NodeRecord& node(const NodeId& id) const {
    const auto i = index_of(id);
    if (!i) throw std::out_of_range("unknown node '" + id + "'");
    return nodes[*i];
  }
};

/// Geometric criteria for a node pair: occlusion margin and the tightest of
/// the policy, per-node and (optionally) per-rule range cutoffs.
inline VisibilityCriteria pair_criteria(const LinkPolicy& policy, const NodeRecord& a,
                                        const NodeRecord& b, const LinkRule* rule = nullptr) {
  VisibilityCriteria c;
  c.occlusion_radius = kEarthRadiusKm + policy.occlusion_margin;
  c.elevation_mask = policy.elevation_mask;
  const auto tighten = [&c](const std::optional<double>& r) {
    if (r) c.max_range = c.max_range ? std::min(*c.max_range, *r) : *r;
  };
  tighten(policy.max_range);
  tighten(a.max_range);
  tighten(b.max_range);
  if (rule) tighten(rule->max_range);
  return c;
}

/// Enforces the configuration invariants; throws std::invalid_argument.
inline void validate(const ScenarioConfig& cfg) {
  if (cfg.nodes.empty()) throw std::invalid_argument("scenario has no nodes");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(cfg.horizon.duration() > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (cfg.step > cfg.horizon.duration()) throw std::invalid_argument("step exceeds horizon");

  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
    const auto& n = cfg.nodes[i];
    if (n.id.empty()) throw std::invalid_argument("node id must be non-empty");
    if (n.id.find_first_of(", \t\"") != std::string::npos) {
      throw std::invalid_argument("node id '" + n.id + "' contains a comma, quote or blank");
    }
    if (!seen.emplace(n.id, i).second) {
      throw std::invalid_argument("duplicate node id '" + n.id + "'");
    }
    if (const auto* el = std::get_if<OrbitalElements>(&n.motion)) validate(*el);
    if (const auto* p = std::get_if<InertialPoint>(&n.motion);
        p && norm(p->position) < kEarthRadiusKm) {
      throw std::invalid_argument("node '" + n.id + "' position lies inside the Earth");
    }
    if (n.kind == NodeKind::ground_station && !is_ground(n.motion)) {
      throw std::invalid_argument("ground_station '" + n.id + "' needs a ground site");
    }
    if ((n.kind == NodeKind::nanosat_terminal || n.kind == NodeKind::provider_satellite) &&
        is_ground(n.motion)) {
      throw std::invalid_argument("satellite '" + n.id + "' cannot be a ground site");
    }
    if (n.layer != classify_layer(n.motion)) {
      throw std::invalid_argument("node '" + n.id + "' layer " + std::string(to_string(n.layer)) +
                                  " inconsistent with its altitude");
    }
    if (n.max_range && !(*n.max_range > 0.0)) {
      throw std::invalid_argument("node '" + n.id + "' max_range_km must be positive");
    }
  }
  for (const auto& s : cfg.links.schedules) {
    for (const auto* id : {&s.node_a, &s.node_b}) {
      if (!seen.contains(*id)) throw std::invalid_argument("schedule node '" + *id + "' unknown");
    }
    if (s.node_a == s.node_b) throw std::invalid_argument("schedule endpoints must differ");
    if (!(s.period > 0.0)) throw std::invalid_argument("schedule period_s must be positive");
    if (!(s.on >= 0.0 && s.on <= s.period)) {
      throw std::invalid_argument("schedule on_s must be in [0, period_s]");
    }
  }
  if (cfg.links.occlusion_margin < -kEarthRadiusKm) {
    throw std::invalid_argument("occlusion_margin_km makes the occlusion radius negative");
  }
  for (const auto& f : cfg.flows) {
    for (const auto* id : {&f.src, &f.dst}) {
      if (!seen.contains(*id)) throw std::invalid_argument("flow endpoint '" + *id + "' unknown");
    }
  }
  if (cfg.sdn.messages_per_hop < 2 || cfg.sdn.messages_per_hop % 2 != 0) {
    throw std::invalid_argument("messages_per_hop must be a positive even number");
  }
  if (!(cfg.sdn.bin > 0.0)) throw std::invalid_argument("bin_s must be positive");
  if (cfg.sdn.controller && !seen.contains(*cfg.sdn.controller)) {
    throw std::invalid_argument("controller '" + *cfg.sdn.controller + "' unknown");
  }
}

}  // namespace sinsim
