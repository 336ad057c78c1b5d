#include "smtjsim/fields.hpp"

#include <cmath>
#include <vector>

namespace smtjsim {

Vec3 shape_field(const MagnetParams& p, const Vec3& demag_n, const Vec3& m) {
  return -p.Ms * demag_n.cwiseProduct(m);
}

Vec3 stress_field(const MagnetParams& p, const StressState& stress,
                  const Vec3& m) {
  double k = 3.0 * p.lambda_s / (kMu0 * p.Ms);
  return Vec3(-k * stress.sigma_major * m.x(), -k * stress.sigma_minor * m.y(),
              0.0);
}

Vec3 effective_field(const MagnetParams& p, const Vec3& demag_n,
                     const StressState& stress, const Vec3& m,
                     const Vec3& dipole_t, const Vec3& thermal_t) {
  return shape_field(p, demag_n, m) + stress_field(p, stress, m) +
         (dipole_t + thermal_t) / kMu0;
}

double total_energy(const MagnetParams& p, const Vec3& demag_n,
                    const StressState& stress, const Vec3& m,
                    const Vec3& dipole_t) {
  double e_shape = 0.5 * kMu0 * p.Ms * p.Ms *
                   (demag_n.x() * m.x() * m.x() + demag_n.y() * m.y() * m.y() +
                    demag_n.z() * m.z() * m.z());
  double e_stress = 1.5 * p.lambda_s *
                    (stress.sigma_major * m.x() * m.x() +
                     stress.sigma_minor * m.y() * m.y());
  double e_zeeman = -p.Ms * m.dot(dipole_t);
  return p.volume() * (e_shape + e_stress + e_zeeman);
}

MinimizeResult energy_minimize(const MagnetParams& p, const Vec3& demag_n,
                               const StressState& stress, const Vec3& dipole_t,
                               const Vec3& fixed_axis, double grid_step_deg) {
  if (!(grid_step_deg > 0.0 && grid_step_deg <= 0.1))
    throw_validation("energy_minimize: grid_step_deg must be in (0, 0.1]");
  int n = static_cast<int>(std::lround(360.0 / grid_step_deg));
  double step = 360.0 / n;

  // Scan theta measured from the fixed-axis azimuth so the tie-break toward
  // larger theta (clockwise preference) needs no frame conversion.
  double phi_f = rad2deg(std::atan2(fixed_axis.y(), fixed_axis.x()));
  auto energy_at = [&](double theta_deg) {
    double phi = deg2rad(theta_deg + phi_f);
    Vec3 m(std::cos(phi), std::sin(phi), 0.0);
    return total_energy(p, demag_n, stress, m, dipole_t);
  };

  int best = 0;
  double best_e = energy_at(0.0);
  double scale = std::abs(best_e);
  for (int i = 1; i < n; ++i) {
    double e = energy_at(i * step);
    if (scale < std::abs(e)) scale = std::abs(e);
    // Near-degenerate minima resolve toward the larger angle.
    if (e < best_e + 1e-12 * scale) {
      best_e = e;
      best = i;
    }
  }

  // Parabolic refinement through the best grid point and its neighbors.
  double em = energy_at(wrap360((best - 1) * step));
  double ep = energy_at(wrap360((best + 1) * step));
  double denom = em - 2.0 * best_e + ep;
  double shift = denom > 0.0 ? 0.5 * (em - ep) / denom : 0.0;
  if (std::abs(shift) > 1.0) shift = 0.0;  // degenerate fit, keep grid point
  double theta_best = wrap360(best * step + shift * step);

  MinimizeResult r;
  r.theta_deg = theta_best;
  r.energy = energy_at(theta_best);
  return r;
}

}  // namespace smtjsim
