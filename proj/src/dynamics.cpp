#include "smtjsim/dynamics.hpp"

#include <cmath>

#include "smtjsim/fields.hpp"
#include "smtjsim/rng.hpp"

namespace smtjsim {
namespace {

// Uniform double strictly inside (0, 1), 53-bit resolution.
double u01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) *
         (1.0 / 9007199254740992.0);
}

// Box-Muller pair; self-contained so noise streams have no hidden state
// beyond the generator (bit-stable across reruns and thread layouts).
void gauss_pair(std::mt19937_64& rng, double& z0, double& z1) {
  double u1 = u01(rng), u2 = u01(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * kPi * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

Vec3 llg_rhs(const MagnetParams& p, const Vec3& m, const Vec3& h) {
  Vec3 torque = m.cross(h);
  return -p.gamma * kMu0 * (torque + p.alpha * m.cross(torque));
}

constexpr int kQuietSteps = 100;  // sustained low-torque window = converged

}  // namespace

Vec3 thermal_field_sample(const MagnetParams& p, double temperature, double dt,
                          std::mt19937_64& rng) {
  if (temperature <= 0.0) return Vec3::Zero();
  double sigma_h = std::sqrt(2.0 * p.alpha * kBoltzmann * temperature /
                             (p.gamma * kMu0 * kMu0 * p.Ms * p.volume() * dt));
  double z0, z1, z2, z3;
  gauss_pair(rng, z0, z1);
  gauss_pair(rng, z2, z3);
  return kMu0 * sigma_h * Vec3(z0, z1, z2);
}

Vec3 llg_step(const MagnetParams& p, const Vec3& demag_n,
              const StressState& stress, const Vec3& dipole_t, const Vec3& m,
              double dt, const Vec3& thermal_t) {
  Vec3 k1 = llg_rhs(
      p, m, effective_field(p, demag_n, stress, m, dipole_t, thermal_t));
  Vec3 mp = m + dt * k1;
  Vec3 k2 = llg_rhs(
      p, mp, effective_field(p, demag_n, stress, mp, dipole_t, thermal_t));
  Vec3 out = m + 0.5 * dt * (k1 + k2);
  return out.normalized();
}

SteadyStateResult relax(const MagnetParams& p, const Vec3& demag_n,
                        const StressState& stress, const Vec3& dipole_t,
                        const Vec3& fixed_axis, const MagState& initial,
                        const SimOptions& options) {
  {
    std::vector<std::string> diag;
    validate(options, &diag, "relax.options: ");
    validate(p, &diag, "relax.magnet: ");
    if (!diag.empty()) throw_validation(diag.front());
  }

  SteadyStateResult res;
  Vec3 m = initial.m.normalized();
  double theta_prev = theta_from_m(m, fixed_axis);
  double net = 0.0;
  auto rng = derive_stream(options.rng_seed, 0);
  const bool thermal = options.temperature > 0.0;
  const double dt = options.dt;
  // The guard keeps exact-multiple horizons from gaining a step to fp error.
  const long long n_steps =
      static_cast<long long>(std::ceil(options.max_time / dt - 1e-9));

  if (options.record_trajectory) res.trajectory.push_back({0.0, m});

  int quiet = 0;
  for (long long i = 1; i <= n_steps; ++i) {
    Vec3 h_th = thermal
                    ? thermal_field_sample(p, options.temperature, dt, rng)
                    : Vec3::Zero();
    m = llg_step(p, demag_n, stress, dipole_t, m, dt, h_th);

    double theta = theta_from_m(m, fixed_axis);
    net += wrap180(theta - theta_prev);
    theta_prev = theta;
    if (options.record_trajectory)
      res.trajectory.push_back({static_cast<double>(i) * dt, m});

    if (!thermal) {
      // Convergence: deterministic |dm/dt| below tolerance, sustained.
      Vec3 rate = llg_rhs(
          p, m, effective_field(p, demag_n, stress, m, dipole_t));
      if (rate.norm() < options.convergence_tol) {
        if (++quiet >= kQuietSteps) {
          res.converged = true;
          res.settle_time = static_cast<double>(i - kQuietSteps + 1) * dt;
          break;
        }
      } else {
        quiet = 0;
      }
    }
  }

  if (!res.converged) res.settle_time = options.max_time;
  res.final_state = make_state(m, fixed_axis);
  res.net_rotation_deg = net;
  if (std::abs(net) < kChiralityThresholdDeg)
    res.chirality = "none";
  else
    res.chirality = net > 0.0 ? "clockwise" : "anticlockwise";
  return res;
}

}  // namespace smtjsim
