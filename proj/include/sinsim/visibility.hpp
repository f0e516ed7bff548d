#pragma once

// Ranges, Earth-occlusion line of sight, contact windows and coverage.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sinsim/constants.hpp"
#include "sinsim/motion.hpp"
#include "sinsim/orbit.hpp"
#include "sinsim/vec3.hpp"

namespace sinsim {

using NodeId = std::string;

inline constexpr double kDefaultGrazingMarginKm = 100.0;
inline constexpr double kDefaultElevationMaskDeg = 10.0;

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
};

struct VisibilitySample {
  double time = 0.0;
  double range = 0.0;  // km
  bool visible = false;
};

/// Maximal visible interval [start, end). `end` is the first sampling instant
/// after the run, or the last sample time when the run reaches the horizon.
struct ContactWindow {
  NodeId node_a;
  NodeId node_b;
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  friend bool operator==(const ContactWindow&, const ContactWindow&) = default;
};

struct VisibilityCriteria {
  double occlusion_radius = kEarthRadiusKm + kDefaultGrazingMarginKm;
  std::optional<double> max_range;
  // Applied instead of the occlusion test when an endpoint sits on the ground.
  double elevation_mask = deg_to_rad(kDefaultElevationMaskDeg);
};

namespace detail {

inline void require_same_instant(const StateVector& a, const StateVector& b) {
  if (std::abs(a.time - b.time) > 1e-9) {
    throw std::invalid_argument("states are not at the same instant (t=" + std::to_string(a.time) +
                                " vs t=" + std::to_string(b.time) + ")");
  }
}

}  // namespace detail

inline double range_between(const StateVector& a, const StateVector& b) {
  detail::require_same_instant(a, b);
  return distance(a.position, b.position);
}

/// Minimum distance from the origin to the closed segment [p, q].
inline double segment_clearance(const Vec3& p, const Vec3& q) {
  // Canonical argument order makes the result exactly symmetric.
  const bool swap = std::tie(q.x, q.y, q.z) < std::tie(p.x, p.y, p.z);
  const Vec3& a = swap ? q : p;
  const Vec3& b = swap ? p : q;
  const Vec3 d = b - a;
  const double dd = dot(d, d);
  if (dd == 0.0) return norm(a);
  const double s = std::clamp(-dot(a, d) / dd, 0.0, 1.0);
  return norm(a + d * s);
}

inline bool line_of_sight(const StateVector& a, const StateVector& b, double occlusion_radius) {
  detail::require_same_instant(a, b);
  if (occlusion_radius < 0.0) throw std::invalid_argument("occlusion radius must be >= 0");
  return segment_clearance(a.position, b.position) > occlusion_radius;
}

/// Elevation of `target` above the local horizon of `site` (rad).
inline double elevation_angle(const StateVector& site, const StateVector& target) {
  const Vec3 rel = target.position - site.position;
  const double len = norm(rel);
  const double up = norm(site.position);
  if (len == 0.0 || up == 0.0) return kPi / 2.0;
  return std::asin(std::clamp(dot(rel, site.position) / (len * up), -1.0, 1.0));
}

/// Full visibility predicate: occlusion (or elevation mask for ground
/// endpoints) plus the optional range cutoff.
inline bool is_visible(const StateVector& a, bool a_on_ground, const StateVector& b,
                       bool b_on_ground, const VisibilityCriteria& criteria) {
  const double range = range_between(a, b);
  if (criteria.max_range && range > *criteria.max_range) return false;
  if (!a_on_ground && !b_on_ground) return line_of_sight(a, b, criteria.occlusion_radius);
  if (a_on_ground && elevation_angle(a, b) < criteria.elevation_mask) return false;
  if (b_on_ground && elevation_angle(b, a) < criteria.elevation_mask) return false;
  return true;
}

/// Sampling instants start, start+step, ... up to and including `end` when it
/// falls on the grid.
inline std::vector<double> sample_times(const TimeSpan& horizon, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sampling step must be positive");
  if (!(horizon.end >= horizon.start)) throw std::invalid_argument("horizon end precedes start");
  const auto count =
      static_cast<std::size_t>(std::floor(horizon.duration() / step + 1e-9)) + 1;
  std::vector<double> times;
  times.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    times.push_back(horizon.start + static_cast<double>(k) * step);
  }
  return times;
}

inline std::vector<VisibilitySample> visibility_series(const Motion& a, const Motion& b,
                                                       const TimeSpan& horizon, double step,
                                                       const VisibilityCriteria& criteria) {
  const bool a_ground = is_ground(a);
  const bool b_ground = is_ground(b);
  std::vector<VisibilitySample> series;
  for (double t : sample_times(horizon, step)) {
    const StateVector sa = state_at(a, t);
    const StateVector sb = state_at(b, t);
    series.push_back({t, range_between(sa, sb), is_visible(sa, a_ground, sb, b_ground, criteria)});
  }
  return series;
}

inline std::vector<VisibilitySample> visibility_series(const OrbitalElements& a,
                                                       const OrbitalElements& b,
                                                       const TimeSpan& horizon, double step,
                                                       double occlusion_radius) {
  VisibilityCriteria criteria;
  criteria.occlusion_radius = occlusion_radius;
  return visibility_series(Motion{a}, Motion{b}, horizon, step, criteria);
}

/// Run-length encodes the visible samples into maximal windows.
inline std::vector<ContactWindow> contact_windows(const std::vector<VisibilitySample>& series,
                                                  const NodeId& node_a = {},
                                                  const NodeId& node_b = {}) {
  std::vector<ContactWindow> windows;
  std::optional<double> open;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0 && series[i].time < series[i - 1].time) {
      throw std::invalid_argument("visibility series is not ordered by time");
    }
    if (series[i].visible && !open) open = series[i].time;
    if (!series[i].visible && open) {
      windows.push_back({node_a, node_b, *open, series[i].time});
      open.reset();
    }
  }
  // A run touching the final sample closes at the horizon; a lone final
  // sample has zero length and is dropped.
  if (open && series.back().time > *open) {
    windows.push_back({node_a, node_b, *open, series.back().time});
  }
  return windows;
}

/// Interval union of possibly overlapping windows, relabelled to (node_a, node_b).
inline std::vector<ContactWindow> union_windows(std::vector<ContactWindow> windows,
                                                const NodeId& node_a, const NodeId& node_b) {
  std::sort(windows.begin(), windows.end(),
            [](const ContactWindow& x, const ContactWindow& y) {
              return std::tie(x.start, x.end) < std::tie(y.start, y.end);
            });
  std::vector<ContactWindow> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, w.end);
    } else {
      merged.push_back({node_a, node_b, w.start, w.end});
    }
  }
  return merged;
}

/// Fraction of the horizon covered by (non-overlapping) windows, clipped to the horizon.
inline double coverage_fraction(const std::vector<ContactWindow>& windows,
                                const TimeSpan& horizon) {
  if (!(horizon.duration() > 0.0)) {
    throw std::invalid_argument("coverage_fraction: horizon must have positive length");
  }
  double covered = 0.0;
  for (const auto& w : windows) {
    const double lo = std::max(w.start, horizon.start);
    const double hi = std::min(w.end, horizon.end);
    if (hi > lo) covered += hi - lo;
  }
  return std::clamp(covered / horizon.duration(), 0.0, 1.0);
}

/// Median window duration (mean of the middle pair for even counts); nullopt when empty.
inline std::optional<double> median_duration(const std::vector<ContactWindow>& windows) {
  if (windows.empty()) return std::nullopt;
  std::vector<double> d;
  d.reserve(windows.size());
  for (const auto& w : windows) d.push_back(w.duration());
  std::sort(d.begin(), d.end());
  const std::size_t mid = d.size() / 2;
  return d.size() % 2 == 1 ? d[mid] : 0.5 * (d[mid - 1] + d[mid]);
}

}  // namespace sinsim
