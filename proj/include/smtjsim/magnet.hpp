#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "smtjsim/constants.hpp"
#include "smtjsim/error.hpp"

namespace smtjsim {

using Vec3 = Eigen::Vector3d;

// Free-layer frame: x = major axis, y = minor axis, z = film normal.
// The magnet is an elliptic cylinder: major_axis/minor_axis are full
// diameters, thickness is the cylinder height.
struct MagnetParams {
  double Ms = 8.0e5;             // saturation magnetization, A/m
  double major_axis = 80e-9;     // m
  double minor_axis = 60e-9;     // m
  double thickness = 15e-9;      // m
  double lambda_s = 900e-6;      // saturation magnetostriction (strain)
  double alpha = 0.1;            // Gilbert damping
  double gamma = kGammaDefault;  // gyromagnetic ratio, rad/(s*T)

  double area() const { return kPi * 0.25 * major_axis * minor_axis; }
  double volume() const { return area() * thickness; }
};

inline void validate(const MagnetParams& p, std::vector<std::string>* out,
                     const std::string& prefix) {
  auto bad = [&](const std::string& m) { out->push_back(prefix + m); };
  if (!(p.Ms > 0)) bad("Ms must be > 0");
  if (!(p.major_axis > p.minor_axis))
    bad("major_axis must exceed minor_axis");
  if (!(p.minor_axis > 0)) bad("minor_axis must be > 0");
  if (!(p.thickness > 0)) bad("thickness must be > 0");
  if (!(p.alpha > 0 && p.alpha < 1)) bad("alpha must be in (0, 1)");
  if (!(p.gamma > 0)) bad("gamma must be > 0");
}

// Unit magnetization plus the derived angle theta (degrees) between the
// free- and fixed-layer magnetizations. theta is the in-plane (azimuthal)
// angle of m relative to the fixed axis, kept in [0, 360) so that the
// 135 -> 225 degree rotation of the transfer characteristic is continuous.
// For in-plane m this equals the true inter-magnetization angle up to the
// reflection theta -> 360 - theta, under which the resistance law is even.
struct MagState {
  Vec3 m = Vec3(-1.0, 0.0, 0.0);
  double theta = 135.0;  // degrees
};

// Azimuth angle of m about z relative to fixed_axis (unit, in-plane).
inline double theta_from_m(const Vec3& m, const Vec3& fixed_axis) {
  double phi_m = std::atan2(m.y(), m.x());
  double phi_f = std::atan2(fixed_axis.y(), fixed_axis.x());
  return wrap360(rad2deg(phi_m - phi_f));
}

inline MagState make_state(const Vec3& m, const Vec3& fixed_axis) {
  MagState s;
  s.m = m.normalized();
  s.theta = theta_from_m(s.m, fixed_axis);
  return s;
}

// Uniaxial in-plane stresses, positive = compressive (positive electrode
// voltage produces positive sigma). sigma_major acts along x, sigma_minor
// along y.
struct StressState {
  double sigma_major = 0.0;  // Pa
  double sigma_minor = 0.0;  // Pa
};

inline constexpr double kDefaultStressLimit = 100e6;  // Pa

inline void validate(const StressState& s, std::vector<std::string>* out,
                     const std::string& prefix,
                     double limit = kDefaultStressLimit) {
  auto bad = [&](const std::string& m) { out->push_back(prefix + m); };
  if (!std::isfinite(s.sigma_major) || !std::isfinite(s.sigma_minor))
    bad("stress must be finite");
  if (std::abs(s.sigma_major) > limit || std::abs(s.sigma_minor) > limit)
    bad("stress magnitude exceeds material limit");
}

struct SimOptions {
  double temperature = 0.0;      // K
  double dt = 1e-12;             // s
  double max_time = 50e-9;       // s
  double convergence_tol = 1e3;  // rad/s threshold on |dm/dt|
  std::uint64_t rng_seed = 1;
  bool record_trajectory = false;
};

inline void validate(const SimOptions& o, std::vector<std::string>* out,
                     const std::string& prefix) {
  auto bad = [&](const std::string& m) { out->push_back(prefix + m); };
  if (!(o.temperature >= 0)) bad("temperature must be >= 0");
  if (!(o.dt > 0 && o.dt <= 10e-12)) bad("dt must be in (0, 10 ps]");
  if (!(o.max_time >= 100.0 * o.dt)) bad("max_time must be >= 100*dt");
  if (!(o.convergence_tol > 0)) bad("convergence_tol must be > 0");
}

}  // namespace smtjsim
