#pragma once

#include <cmath>

namespace smtjsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMu0 = 4.0e-7 * kPi;          // vacuum permeability, T*m/A
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K

// Free-electron gyromagnetic prefactor: gamma*mu0 = 2.21e5 (rad/s)/(A/m).
// gamma itself is stored in rad/(s*T).
inline constexpr double kGammaMu0 = 2.21e5;
inline constexpr double kGammaDefault = kGammaMu0 / kMu0;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Wraps an angle in degrees to [0, 360).
inline double wrap360(double deg) {
  double w = std::fmod(deg, 360.0);
  return w < 0.0 ? w + 360.0 : w;
}

// Wraps an angle difference in degrees to (-180, 180].
inline double wrap180(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

}  // namespace smtjsim
