#pragma once

#include <random>
#include <string>
#include <vector>

#include "smtjsim/magnet.hpp"

namespace smtjsim {

struct TrajectoryPoint {
  double time = 0.0;  // s
  Vec3 m = Vec3::Zero();
};

struct SteadyStateResult {
  MagState final_state;
  bool converged = false;
  double settle_time = 0.0;       // s, start of the first sustained quiet window
  double net_rotation_deg = 0.0;  // unwrapped theta(final) - theta(initial)
  std::string chirality;          // "clockwise" | "anticlockwise" | "none"
  std::vector<TrajectoryPoint> trajectory;  // filled when requested
};

// Rotation sense classification threshold: smaller unwrapped excursions
// report "none". Positive net rotation (increasing theta) is "clockwise".
inline constexpr double kChiralityThresholdDeg = 5.0;

// One Langevin thermal field sample as flux density (tesla), isotropic
// Gaussian with per-component std mu0 * sqrt(2 alpha kB T / (gamma mu0^2 Ms V dt)).
// Zero vector at T = 0.
Vec3 thermal_field_sample(const MagnetParams& p, double temperature, double dt,
                          std::mt19937_64& rng);

// One Heun (predictor-corrector) step of the stochastic LLG
//   dm/dt = -gamma mu0 [ m x H + alpha m x (m x H) ],  H in A/m.
// The same thermal sample is used in both stages (Stratonovich) and |m| is
// renormalized once after the corrector. Returns the updated m.
Vec3 llg_step(const MagnetParams& p, const Vec3& demag_n,
              const StressState& stress, const Vec3& dipole_t, const Vec3& m,
              double dt, const Vec3& thermal_t);

// Integrates from `initial` until the deterministic rate |dm/dt| stays
// below options.convergence_tol (rad/s) for a sustained window, or until
// options.max_time. Thermal noise (options.temperature > 0) draws from a
// stream derived from options.rng_seed. Records the trajectory when
// options.record_trajectory is set.
SteadyStateResult relax(const MagnetParams& p, const Vec3& demag_n,
                        const StressState& stress, const Vec3& dipole_t,
                        const Vec3& fixed_axis, const MagState& initial,
                        const SimOptions& options);

}  // namespace smtjsim
