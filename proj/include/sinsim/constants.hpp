#pragma once

#include <numbers>

namespace sinsim {

// WGS-84 values, spherical Earth.
inline constexpr double kEarthRadiusKm = 6378.137;
inline constexpr double kEarthMuKm3PerS2 = 398600.4418;
inline constexpr double kEarthRotationRadPerS = 7.2921159e-5;

inline constexpr double kSpeedOfLightKmPerS = 299792.458;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kGeoAltitudeKm = 35786.0;
inline constexpr double kLeoCeilingKm = 2000.0;
// Half-width of the altitude band classified as GEO.
inline constexpr double kGeoBandKm = 500.0;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace sinsim
