#pragma once

#include <cmath>
#include <type_traits>
#include <variant>

#include "sinsim/constants.hpp"
#include "sinsim/orbit.hpp"
#include "sinsim/vec3.hpp"

namespace sinsim {

/// A node pinned at a fixed inertial position (test fixtures, stylized scenarios).
struct InertialPoint {
  Vec3 position;
};

/// A site on the rotating spherical Earth. Greenwich is aligned with the
/// inertial x axis at t = 0.
struct GroundSite {
  double latitude = 0.0;   // rad
  double longitude = 0.0;  // rad
  double altitude = 0.0;   // km above the sphere
};

using Motion = std::variant<OrbitalElements, InertialPoint, GroundSite>;

inline StateVector state_at(const Motion& motion, double t) {
  return std::visit(
      [t](const auto& m) -> StateVector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, OrbitalElements>) {
          return elements_to_state(m, t);
        } else if constexpr (std::is_same_v<T, InertialPoint>) {
          return StateVector{m.position, Vec3{}, t};
        } else {
          const double r = kEarthRadiusKm + m.altitude;
          const double lon = m.longitude + kEarthRotationRadPerS * t;
          const Vec3 pos{r * std::cos(m.latitude) * std::cos(lon),
                         r * std::cos(m.latitude) * std::sin(lon), r * std::sin(m.latitude)};
          const Vec3 omega{0.0, 0.0, kEarthRotationRadPerS};
          return StateVector{pos, cross(omega, pos), t};
        }
      },
      motion);
}

inline bool is_ground(const Motion& motion) { return std::holds_alternative<GroundSite>(motion); }

/// Altitude used for layer classification; orbits report a - R.
inline double nominal_altitude(const Motion& motion) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, OrbitalElements>) {
          return m.semi_major_axis - kEarthRadiusKm;
        } else if constexpr (std::is_same_v<T, InertialPoint>) {
          return norm(m.position) - kEarthRadiusKm;
        } else {
          return m.altitude;
        }
      },
      motion);
}

}  // namespace sinsim
