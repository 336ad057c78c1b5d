#pragma once

#include "smtjsim/magnet.hpp"

namespace smtjsim {

// Energy model of the free layer, in-plane stress axes fixed to the ellipse
// axes: sigma_major couples to m_x, sigma_minor to m_y. Positive stress is
// compressive and raises the energy of its axis (magnetostriction
// coefficient lambda_s > 0 assumed).
//
// E = V [ (mu0 Ms^2 / 2)(Nx mx^2 + Ny my^2 + Nz mz^2)
//       + (3 lambda_s / 2)(sigma_major mx^2 + sigma_minor my^2)
//       - Ms (m . B_dipole) ]
//
// The effective field is the exact negative gradient, H = -(1/(mu0 Ms V)) dE/dm,
// expressed in A/m. Dipole and thermal fields are supplied as flux density
// in tesla and enter the field as B/mu0.

// Shape anisotropy field, A/m.
Vec3 shape_field(const MagnetParams& p, const Vec3& demag_n, const Vec3& m);

// Magnetoelastic field from both in-plane stress axes, A/m.
Vec3 stress_field(const MagnetParams& p, const StressState& stress,
                  const Vec3& m);

// Deterministic + stochastic effective field, A/m.
Vec3 effective_field(const MagnetParams& p, const Vec3& demag_n,
                     const StressState& stress, const Vec3& m,
                     const Vec3& dipole_t = Vec3::Zero(),
                     const Vec3& thermal_t = Vec3::Zero());

// Total free energy in joules (thermal field carries no energy term).
double total_energy(const MagnetParams& p, const Vec3& demag_n,
                    const StressState& stress, const Vec3& m,
                    const Vec3& dipole_t = Vec3::Zero());

struct MinimizeResult {
  double theta_deg = 0.0;  // equilibrium angle relative to the fixed axis
  double energy = 0.0;     // J at the returned angle
};

// Exhaustive in-plane energy scan over [0, 360) degrees at grid_step_deg
// (validated <= 0.1), followed by a parabolic refinement of the best grid
// point. Near-degenerate minima (within 1e-12 relative energy) resolve to
// the larger angle. theta is measured from the fixed-axis azimuth.
MinimizeResult energy_minimize(const MagnetParams& p, const Vec3& demag_n,
                               const StressState& stress, const Vec3& dipole_t,
                               const Vec3& fixed_axis,
                               double grid_step_deg = 0.05);

}  // namespace smtjsim
