#pragma once

// Two-body Keplerian propagation and Walker-delta constellation generation.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinsim/constants.hpp"
#include "sinsim/vec3.hpp"

namespace sinsim {

/// Keplerian elements of one satellite. Angles in radians, lengths in km,
/// epoch in simulation seconds.
struct OrbitalElements {
  double semi_major_axis = 0.0;
  double eccentricity = 0.0;
  double inclination = 0.0;
  double raan = 0.0;
  double arg_perigee = 0.0;
  double mean_anomaly_epoch = 0.0;
  double epoch = 0.0;

  friend bool operator==(const OrbitalElements&, const OrbitalElements&) = default;
};

struct StateVector {
  Vec3 position;  // km, Earth-centered inertial
  Vec3 velocity;  // km/s
  double time = 0.0;
};

struct WalkerSpec {
  std::size_t total_satellites = 0;
  std::size_t planes = 0;
  std::size_t phasing = 0;
  double inclination = 0.0;
  double altitude = 0.0;
};

/// Wraps an angle into [0, 2π).
inline double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a value just below a multiple of 2π can round up to 2π.
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Throws std::invalid_argument naming the first violated invariant.
inline void validate(const OrbitalElements& el) {
  if (!std::isfinite(el.semi_major_axis) || el.semi_major_axis <= kEarthRadiusKm) {
    throw std::invalid_argument("semi_major_axis must exceed the Earth radius (" +
                                std::to_string(kEarthRadiusKm) + " km), got " +
                                std::to_string(el.semi_major_axis));
  }
  if (!(el.eccentricity >= 0.0 && el.eccentricity < 1.0)) {
    throw std::invalid_argument("eccentricity must be in [0, 1), got " +
                                std::to_string(el.eccentricity));
  }
  const auto check_angle = [](double v, const char* name) {
    if (!(v >= 0.0 && v < kTwoPi)) {
      throw std::invalid_argument(std::string(name) + " must be normalized to [0, 2pi), got " +
                                  std::to_string(v));
    }
  };
  check_angle(el.inclination, "inclination");
  check_angle(el.raan, "raan");
  check_angle(el.arg_perigee, "arg_perigee");
  check_angle(el.mean_anomaly_epoch, "mean_anomaly_epoch");
  if (!std::isfinite(el.epoch)) throw std::invalid_argument("epoch must be finite");
}

/// Circular orbit at the given altitude above the spherical Earth.
inline OrbitalElements circular_orbit(double altitude_km, double inclination, double raan = 0.0,
                                      double mean_anomaly = 0.0) {
  OrbitalElements el;
  el.semi_major_axis = kEarthRadiusKm + altitude_km;
  el.inclination = normalize_angle(inclination);
  el.raan = normalize_angle(raan);
  el.mean_anomaly_epoch = normalize_angle(mean_anomaly);
  return el;
}

/// Solves M = E - e sin E for the eccentric anomaly E.
///
/// Newton iteration from E0 = M, guarded by a bracket of width 2e around M:
/// whenever a Newton step leaves the bracket the solver bisects instead, so
/// convergence is guaranteed for every e in [0, 1). The returned E satisfies
/// |E - e sin E - M| < 1e-12 for mean anomalies of moderate magnitude.
inline double solve_kepler(double mean_anomaly, double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw std::invalid_argument("solve_kepler: eccentricity must be in [0, 1), got " +
                                std::to_string(eccentricity));
  }
  if (!std::isfinite(mean_anomaly)) {
    throw std::invalid_argument("solve_kepler: mean anomaly must be finite");
  }
  if (eccentricity == 0.0) return mean_anomaly;

  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 50;

  const double m = mean_anomaly;
  const auto residual = [&](double e_anom) {
    return e_anom - eccentricity * std::sin(e_anom) - m;
  };

  // |E - M| = e |sin E| <= e, so the root lies in [M - e, M + e].
  double lo = m - eccentricity;
  double hi = m + eccentricity;
  double e_anom = m;
  double best = e_anom;
  double best_res = std::abs(residual(e_anom));

  for (int i = 0; i < kMaxIterations; ++i) {
    const double f = residual(e_anom);
    const double abs_f = std::abs(f);
    if (abs_f < best_res) {
      best_res = abs_f;
      best = e_anom;
    }
    if (abs_f < 0.25 * kTolerance) break;
    if (f < 0.0) {
      lo = e_anom;
    } else {
      hi = e_anom;
    }
    const double fprime = 1.0 - eccentricity * std::cos(e_anom);
    double next = e_anom - f / fprime;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == e_anom) break;
    e_anom = next;
  }
  return best;
}

inline double mean_motion(const OrbitalElements& el) {
  return std::sqrt(kEarthMuKm3PerS2 / (el.semi_major_axis * el.semi_major_axis * el.semi_major_axis));
}

/// Kepler's third law, T = 2π sqrt(a³/μ).
inline double orbital_period(const OrbitalElements& el) {
  validate(el);
  return kTwoPi / mean_motion(el);
}

/// Position and velocity in the Earth-centered inertial frame at time t.
inline StateVector elements_to_state(const OrbitalElements& el, double t) {
  const double n = mean_motion(el);
  const double m = normalize_angle(el.mean_anomaly_epoch + n * (t - el.epoch));
  const double e = el.eccentricity;
  const double a = el.semi_major_axis;
  const double ecc_anom = solve_kepler(m, e);

  const double cos_e = std::cos(ecc_anom);
  const double sin_e = std::sin(ecc_anom);
  const double root = std::sqrt(1.0 - e * e);
  const double r = a * (1.0 - e * cos_e);

  // Perifocal frame.
  const double px = a * (cos_e - e);
  const double py = a * root * sin_e;
  const double vscale = std::sqrt(kEarthMuKm3PerS2 * a) / r;
  const double vx = -vscale * sin_e;
  const double vy = vscale * root * cos_e;

  const double co = std::cos(el.raan);
  const double so = std::sin(el.raan);
  const double cw = std::cos(el.arg_perigee);
  const double sw = std::sin(el.arg_perigee);
  const double ci = std::cos(el.inclination);
  const double si = std::sin(el.inclination);

  // Columns of R3(-raan) R1(-i) R3(-argp) for the perifocal x and y axes.
  const Vec3 p_axis{co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si};
  const Vec3 q_axis{-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si};

  return StateVector{p_axis * px + q_axis * py, p_axis * vx + q_axis * vy, t};
}

inline void validate(const WalkerSpec& spec) {
  if (spec.total_satellites == 0) throw std::invalid_argument("walker total must be positive");
  if (spec.planes == 0) throw std::invalid_argument("walker planes must be positive");
  if (spec.total_satellites % spec.planes != 0) {
    throw std::invalid_argument("walker planes (" + std::to_string(spec.planes) +
                                ") must divide total (" + std::to_string(spec.total_satellites) +
                                ")");
  }
  if (spec.phasing >= spec.planes) {
    throw std::invalid_argument("walker phasing must be in [0, planes - 1], got " +
                                std::to_string(spec.phasing));
  }
  if (!(spec.altitude > 0.0)) throw std::invalid_argument("walker altitude must be positive");
}

/// Walker-delta t/p/f constellation, plane-major order: element k*(t/p)+j is
/// slot j of plane k.
inline std::vector<OrbitalElements> generate_walker(const WalkerSpec& spec) {
  validate(spec);
  const std::size_t per_plane = spec.total_satellites / spec.planes;
  const double t = static_cast<double>(spec.total_satellites);
  std::vector<OrbitalElements> out;
  out.reserve(spec.total_satellites);
  for (std::size_t plane = 0; plane < spec.planes; ++plane) {
    const double raan = kTwoPi * static_cast<double>(plane) / static_cast<double>(spec.planes);
    const double phase =
        kTwoPi * static_cast<double>(spec.phasing) * static_cast<double>(plane) / t;
    for (std::size_t slot = 0; slot < per_plane; ++slot) {
      const double anomaly =
          kTwoPi * static_cast<double>(slot) / static_cast<double>(per_plane) + phase;
      out.push_back(circular_orbit(spec.altitude, spec.inclination, raan, anomaly));
    }
  }
  return out;
}

}  // namespace sinsim
