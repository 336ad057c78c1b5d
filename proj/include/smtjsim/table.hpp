#pragma once

#include <string>
#include <vector>

#include "smtjsim/device.hpp"

namespace smtjsim {

// Precomputed steady-state resistance over a regular (V2, V3) voltage grid.
// Values are row-major with V2 fastest: index = i3 * n2 + i2.
struct ResistanceTable {
  double v2_min = -0.1, v2_step = 0.00625;
  double v3_min = -0.1, v3_step = 0.00625;
  int n2 = 0, n3 = 0;
  std::vector<double> r_ohm;
  std::string meta;  // caller tag (e.g. config digest), round-tripped on save

  double v2_max() const { return v2_min + (n2 - 1) * v2_step; }
  double v3_max() const { return v3_min + (n3 - 1) * v3_step; }
  double at(int i2, int i3) const { return r_ohm[size_t(i3) * n2 + i2]; }

  // Bilinear interpolation; exact at grid nodes. Out-of-range queries are a
  // validation error.
  double lookup(double v2, double v3) const;
};

inline constexpr double kMaxTableStep = 0.025;  // V

// Builds the grid by running the steady_angle relaxation protocol at every
// node (temperature forced to 0), so the table is a cache of exactly the
// physics a direct per-point computation would produce. step is validated
// against kMaxTableStep.
ResistanceTable build_resistance_table(const DeviceConfig& c, double v2_min,
                                       double v2_max, double v3_min,
                                       double v3_max, double step,
                                       const SimOptions& options,
                                       int n_threads = 0);

void save_table(const ResistanceTable& t, const std::string& path);
ResistanceTable load_table(const std::string& path);

}  // namespace smtjsim
