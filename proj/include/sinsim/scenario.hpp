#pragma once

// Line-oriented scenario documents.
//
//   # comment
//   [time]      horizon_s, step_s
//   [scenario]  name
//   [node]      id, kind, group, max_range_km and one of
//                 orbit:    altitude_km | semi_major_axis_km, eccentricity,
//                           inclination_deg, raan_deg, arg_perigee_deg,
//                           mean_anomaly_deg, epoch_s
//                 ground:   latitude_deg, longitude_deg, altitude_km
//                 inertial: position_km = x y z
//   [walker]    name, kind, total, planes, phasing, inclination_deg,
//               altitude_km, raan_offset_deg, max_range_km, group
//   [links]     allow = <kind> <kind> [same_group] [max_range_km=X] [bandwidth_mbps=Y]
//               occlusion_margin_km, max_range_km, elevation_mask_deg
//   [schedule]  a, b, period_s, on_s, phase_s
//   [flow]      src, dst, bidirectional, label
//   [sdn]       messages_per_hop, bin_s, rule_removal, controller
//
// Sections other than [time], [scenario], [links] and [sdn] may repeat; each
// occurrence declares one entity. Walker satellites get ids name-plane-slot.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "sinsim/constants.hpp"
#include "sinsim/motion.hpp"
#include "sinsim/orbit.hpp"
#include "sinsim/scenario_config.hpp"

namespace sinsim {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a, used to fingerprint scenario documents in run metadata.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::multimap<std::string, Entry> entries;
};

class SectionReader {
 public:
  explicit SectionReader(const Section& s) : s_(s) {}

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    int line = s_.line;
    if (const auto it = s_.entries.find(std::string(key)); it != s_.entries.end()) {
      line = it->second.line;
    }
    throw ScenarioError("line " + std::to_string(line) + ": [" + s_.name + "] " +
                        std::string(key) + ": " + what);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ScenarioError("line " + std::to_string(s_.line) + ": [" + s_.name + "] " + what);
  }

  bool has(std::string_view key) const { return s_.entries.contains(std::string(key)); }

  std::optional<std::string> text(std::string_view key) const {
    const auto it = s_.entries.find(std::string(key));
    if (it == s_.entries.end()) return std::nullopt;
    return it->second.value;
  }

  std::string required_text(std::string_view key) const {
    auto v = text(key);
    if (!v || v->empty()) fail(key, "required");
    return *v;
  }

  std::optional<double> number(std::string_view key) const {
    const auto v = text(key);
    if (!v) return std::nullopt;
    return parse_double(key, *v);
  }

  double number_or(std::string_view key, double fallback) const {
    return number(key).value_or(fallback);
  }

  double required_number(std::string_view key) const {
    const auto v = number(key);
    if (!v) fail(key, "required");
    return *v;
  }

  std::size_t required_count(std::string_view key) const {
    const std::string v = required_text(key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      fail(key, "expected a non-negative integer, got '" + v + "'");
    }
    return out;
  }

  bool flag_or(std::string_view key, bool fallback) const {
    const auto v = text(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    fail(key, "expected true/false, got '" + *v + "'");
  }

  std::vector<Entry> all(std::string_view key) const {
    std::vector<Entry> out;
    const auto [lo, hi] = s_.entries.equal_range(std::string(key));
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
  }

  void only(std::initializer_list<std::string_view> allowed,
            std::initializer_list<std::string_view> repeatable = {}) const {
    for (auto it = s_.entries.begin(); it != s_.entries.end(); ++it) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == it->first;
      if (!ok) fail(it->first, "unknown field");
      bool multi = false;
      for (auto r : repeatable) multi = multi || r == it->first;
      if (!multi && s_.entries.count(it->first) > 1) fail(it->first, "given more than once");
    }
  }

  double parse_double(std::string_view key, const std::string& v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(key, "expected a number, got '" + v + "'");
    }
    return out;
  }

 private:
  const Section& s_;
};

inline std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ScenarioError("line " + std::to_string(line_no) + ": malformed section header");
      }
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (sections.empty()) {
      throw ScenarioError("line " + std::to_string(line_no) + ": field outside any section");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ScenarioError("line " + std::to_string(line_no) + ": empty key");
    sections.back().entries.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }
  return sections;
}

inline NodeKind read_kind(const SectionReader& r, std::string_view key, NodeKind fallback) {
  const auto v = r.text(key);
  if (!v) return fallback;
  const auto k = parse_node_kind(*v);
  if (!k) r.fail(key, "unknown node kind '" + *v + "'");
  return *k;
}

inline std::optional<double> read_positive(const SectionReader& r, std::string_view key) {
  const auto v = r.number(key);
  if (v && !(*v > 0.0)) r.fail(key, "must be positive");
  return v;
}

inline NodeRecord read_node(const SectionReader& r) {
  r.only({"id", "kind", "group", "max_range_km", "altitude_km", "semi_major_axis_km",
          "eccentricity", "inclination_deg", "raan_deg", "arg_perigee_deg", "mean_anomaly_deg",
          "epoch_s", "latitude_deg", "longitude_deg", "position_km"});
  NodeRecord n;
  n.id = r.required_text("id");
  n.kind = read_kind(r, "kind", NodeKind::provider_satellite);
  n.group = r.text("group").value_or(n.id);
  n.max_range = read_positive(r, "max_range_km");

  if (const auto pos = r.text("position_km")) {
    const auto parts = split_ws(*pos);
    if (parts.size() != 3) r.fail("position_km", "expected three coordinates");
    n.motion = InertialPoint{{r.parse_double("position_km", parts[0]),
                              r.parse_double("position_km", parts[1]),
                              r.parse_double("position_km", parts[2])}};
  } else if (r.has("latitude_deg")) {
    const double lat = r.required_number("latitude_deg");
    if (lat < -90.0 || lat > 90.0) r.fail("latitude_deg", "must be in [-90, 90]");
    n.motion = GroundSite{deg_to_rad(lat), deg_to_rad(r.number_or("longitude_deg", 0.0)),
                          r.number_or("altitude_km", 0.0)};
  } else {
    OrbitalElements el;
    if (r.has("semi_major_axis_km") == r.has("altitude_km")) {
      r.fail("give exactly one of altitude_km or semi_major_axis_km");
    }
    el.semi_major_axis = r.has("altitude_km") ? kEarthRadiusKm + r.required_number("altitude_km")
                                              : r.required_number("semi_major_axis_km");
    el.eccentricity = r.number_or("eccentricity", 0.0);
    el.inclination = normalize_angle(deg_to_rad(r.number_or("inclination_deg", 0.0)));
    el.raan = normalize_angle(deg_to_rad(r.number_or("raan_deg", 0.0)));
    el.arg_perigee = normalize_angle(deg_to_rad(r.number_or("arg_perigee_deg", 0.0)));
    el.mean_anomaly_epoch = normalize_angle(deg_to_rad(r.number_or("mean_anomaly_deg", 0.0)));
    el.epoch = r.number_or("epoch_s", 0.0);
    try {
      validate(el);
    } catch (const std::invalid_argument& e) {
      r.fail("node '" + n.id + "': " + e.what());
    }
    n.motion = el;
  }
  n.layer = classify_layer(n.motion);
  return n;
}

inline std::vector<NodeRecord> read_walker(const SectionReader& r) {
  r.only({"name", "kind", "group", "total", "planes", "phasing", "inclination_deg", "altitude_km",
          "raan_offset_deg", "max_range_km"});
  const std::string name = r.required_text("name");
  WalkerSpec spec;
  spec.total_satellites = r.required_count("total");
  spec.planes = r.required_count("planes");
  spec.phasing = r.has("phasing") ? r.required_count("phasing") : 0;
  spec.inclination = normalize_angle(deg_to_rad(r.required_number("inclination_deg")));
  spec.altitude = r.required_number("altitude_km");
  std::vector<OrbitalElements> elements;
  try {
    elements = generate_walker(spec);
  } catch (const std::invalid_argument& e) {
    r.fail("walker '" + name + "': " + e.what());
  }
  const double raan_offset = deg_to_rad(r.number_or("raan_offset_deg", 0.0));
  const NodeKind kind = read_kind(r, "kind", NodeKind::provider_satellite);
  const auto max_range = read_positive(r, "max_range_km");
  const std::string group = r.text("group").value_or(name);
  const std::size_t per_plane = spec.total_satellites / spec.planes;

  std::vector<NodeRecord> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    auto el = elements[i];
    el.raan = normalize_angle(el.raan + raan_offset);
    NodeRecord n;
    n.id = name + "-" + std::to_string(i / per_plane) + "-" + std::to_string(i % per_plane);
    n.kind = kind;
    n.motion = el;
    n.layer = classify_layer(n.motion);
    n.group = group;
    n.max_range = max_range;
    out.push_back(std::move(n));
  }
  return out;
}

inline void read_links(const SectionReader& r, LinkPolicy& policy) {
  r.only({"allow", "occlusion_margin_km", "max_range_km", "elevation_mask_deg"}, {"allow"});
  policy.occlusion_margin = r.number_or("occlusion_margin_km", kDefaultGrazingMarginKm);
  policy.max_range = read_positive(r, "max_range_km");
  policy.elevation_mask = deg_to_rad(r.number_or("elevation_mask_deg", kDefaultElevationMaskDeg));
  for (const auto& entry : r.all("allow")) {
    const auto parts = split_ws(entry.value);
    if (parts.size() < 2) r.fail("allow", "expected two node kinds");
    LinkRule rule;
    const auto ka = parse_node_kind(parts[0]);
    const auto kb = parse_node_kind(parts[1]);
    if (!ka) r.fail("allow", "unknown node kind '" + parts[0] + "'");
    if (!kb) r.fail("allow", "unknown node kind '" + parts[1] + "'");
    rule.kind_a = *ka;
    rule.kind_b = *kb;
    for (std::size_t i = 2; i < parts.size(); ++i) {
      const std::string& opt = parts[i];
      if (opt == "same_group") {
        rule.same_group = true;
      } else if (opt.starts_with("max_range_km=")) {
        rule.max_range = r.parse_double("allow", opt.substr(13));
        if (!(*rule.max_range > 0.0)) r.fail("allow", "max_range_km must be positive");
      } else if (opt.starts_with("bandwidth_mbps=")) {
        rule.bandwidth_mbps = r.parse_double("allow", opt.substr(15));
      } else {
        r.fail("allow", "unknown option '" + opt + "'");
      }
    }
    policy.rules.push_back(rule);
  }
}

}  // namespace detail

/// Parses and validates a scenario document. Errors name the line, section
/// and offending field.
inline ScenarioConfig parse_scenario(std::string_view text) {
  using detail::SectionReader;
  ScenarioConfig cfg;
  cfg.horizon = {0.0, 0.0};
  cfg.source_hash = fnv1a64(text);
  std::set<std::string> singletons;
  bool have_time = false;

  for (const auto& section : detail::split_sections(text)) {
    const SectionReader r(section);
    const std::string& name = section.name;
    if (name == "time" || name == "scenario" || name == "links" || name == "sdn") {
      if (!singletons.insert(name).second) r.fail("section given more than once");
    }
    if (name == "time") {
      r.only({"horizon_s", "step_s"});
      cfg.horizon = {0.0, r.required_number("horizon_s")};
      cfg.step = r.number_or("step_s", cfg.step);
      if (!(cfg.horizon.end > 0.0)) r.fail("horizon_s", "must be positive");
      if (!(cfg.step > 0.0)) r.fail("step_s", "must be positive");
      if (cfg.step > cfg.horizon.end) r.fail("step_s", "exceeds horizon_s");
      have_time = true;
    } else if (name == "scenario") {
      r.only({"name"});
      cfg.name = r.required_text("name");
    } else if (name == "node") {
      cfg.nodes.push_back(detail::read_node(r));
    } else if (name == "walker") {
      auto sats = detail::read_walker(r);
      cfg.nodes.insert(cfg.nodes.end(), std::make_move_iterator(sats.begin()),
                       std::make_move_iterator(sats.end()));
    } else if (name == "links") {
      detail::read_links(r, cfg.links);
    } else if (name == "schedule") {
      r.only({"a", "b", "period_s", "on_s", "phase_s"});
      cfg.links.schedules.push_back({r.required_text("a"), r.required_text("b"),
                                     r.required_number("period_s"), r.required_number("on_s"),
                                     r.number_or("phase_s", 0.0)});
    } else if (name == "flow") {
      r.only({"src", "dst", "bidirectional", "label"});
      cfg.flows.push_back({r.required_text("src"), r.required_text("dst"),
                           r.flag_or("bidirectional", true), r.text("label").value_or("data")});
    } else if (name == "sdn") {
      r.only({"messages_per_hop", "bin_s", "rule_removal", "controller"});
      if (r.has("messages_per_hop")) {
        cfg.sdn.messages_per_hop = static_cast<int>(r.required_count("messages_per_hop"));
      }
      cfg.sdn.bin = r.number_or("bin_s", cfg.sdn.bin);
      cfg.sdn.rule_removal = r.flag_or("rule_removal", false);
      if (auto c = r.text("controller")) cfg.sdn.controller = *c;
    } else {
      r.fail("unknown section");
    }
  }
  if (!have_time) throw ScenarioError("missing [time] section");
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid scenario: ") + e.what());
  }
  return cfg;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sinsim
