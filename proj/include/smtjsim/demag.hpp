#pragma once

#include "smtjsim/magnet.hpp"

namespace smtjsim {

// Magnetometric demagnetization factors of the elliptic-cylinder free layer,
// (Nx, Ny, Nz) with x = major axis, y = minor axis, z = thickness.
// Nx + Ny + Nz = 1 structurally (mutual-tensor trace identity); for a thin
// ellipse with major axis x: Nz > Ny > Nx.
//
// Method: the cross-section is covered by an n x n grid of full-thickness
// rectangular prisms (midpoint classification); the volume-averaged tensor
// is the count-weighted sum of Newell mutual-tensor diagonals over all cell
// offsets. resolution = n; cost O(n^3), ~0.5 s at n = 256.
Vec3 demag_factors(const MagnetParams& params, int resolution = 256);

// Newell mutual-tensor diagonal N_xx between two congruent dx*dy*dz prisms
// whose centers are offset by (X, Y, Z). Exposed for tests.
double newell_nxx(double X, double Y, double Z, double dx, double dy,
                  double dz);

}  // namespace smtjsim
