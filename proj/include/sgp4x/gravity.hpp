#pragma once

#include <cmath>

namespace sgp4x {

/// Geopotential constants in the canonical units of the theory: distances in
/// earth radii, time in minutes.
struct GravityModel {
  double mu = 0.0;               // km^3/s^2
  double radius_earth_km = 0.0;  // km
  double xke = 0.0;              // sqrt(mu) in earth-radii^1.5 per minute
  double tumin = 0.0;            // minutes per canonical time unit, 1/xke
  double j2 = 0.0;
  double j3 = 0.0;
  double j4 = 0.0;
  double j3oj2 = 0.0;
};

/// Builds a model from mu, radius and zonal harmonics, deriving xke, tumin
/// and j3/j2.
inline GravityModel make_gravity_model(double mu, double radius_earth_km, double j2, double j3, double j4) {
  GravityModel g;
  g.mu = mu;
  g.radius_earth_km = radius_earth_km;
  g.xke = 60.0 / std::sqrt(radius_earth_km * radius_earth_km * radius_earth_km / mu);
  g.tumin = 1.0 / g.xke;
  g.j2 = j2;
  g.j3 = j3;
  g.j4 = j4;
  g.j3oj2 = j3 / j2;
  return g;
}

/// WGS72, the constant set SGP4 element sets are fitted with.
inline GravityModel wgs72() { return make_gravity_model(398600.8, 6378.135, 0.001082616, -0.00000253881, -0.00000165597); }

}  // namespace sgp4x
