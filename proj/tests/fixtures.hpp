#pragma once

#include <string>
#include <utility>

#include "sinsim/scenario_config.hpp"

namespace fixtures {

inline sinsim::NodeRecord point(std::string id, sinsim::Vec3 p,
                                sinsim::NodeKind kind = sinsim::NodeKind::provider_satellite) {
  sinsim::NodeRecord n;
  n.id = id;
  n.kind = kind;
  n.motion = sinsim::InertialPoint{p};
  n.layer = sinsim::classify_layer(n.motion);
  n.group = std::move(id);
  return n;
}

inline sinsim::NodeRecord orbiting(std::string id, sinsim::OrbitalElements el,
                                   sinsim::NodeKind kind = sinsim::NodeKind::provider_satellite,
                                   std::string group = {}) {
  sinsim::NodeRecord n;
  n.id = id;
  n.kind = kind;
  n.motion = el;
  n.layer = sinsim::classify_layer(n.motion);
  n.group = group.empty() ? std::move(id) : std::move(group);
  return n;
}

inline sinsim::LinkRule allow(sinsim::NodeKind a, sinsim::NodeKind b, bool same_group = false) {
  sinsim::LinkRule r;
  r.kind_a = a;
  r.kind_b = b;
  r.same_group = same_group;
  return r;
}

inline sinsim::ScenarioConfig config(double horizon, double step) {
  sinsim::ScenarioConfig cfg;
  cfg.name = "fixture";
  cfg.horizon = {0.0, horizon};
  cfg.step = step;
  return cfg;
}

}  // namespace fixtures
