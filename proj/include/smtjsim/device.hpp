#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smtjsim/dynamics.hpp"
#include "smtjsim/fields.hpp"
#include "smtjsim/magnet.hpp"

namespace smtjsim {

// Piezoelectric actuation: a gate voltage across the film gap produces an
// electric field V/gap, converted to in-plane uniaxial stress through the
// measured field-per-stress coefficient ((V/m) per Pa).
struct PiezoConfig {
  double gap = 100e-9;               // piezo film thickness under the gate, m
  double field_per_stress = 0.037;   // (V/m) per Pa
  double capacitance = 1.5e-15;      // gate storage capacitance, F
  double electrode_edge = 100e-9;      // metadata: square electrode edge, m
  double electrode_distance = 120e-9;  // metadata: electrode spacing, m
  double breakdown_voltage = 1.0;    // max |V| before film breakdown
};

void validate(const PiezoConfig& p, std::vector<std::string>& out,
              const std::string& prefix = "piezo");

// Tunnel junction resistance vs free-layer angle:
//   R(theta) = R_P + (R_AP - R_P) (1 - cos t) / (chi (1 + cos t) + 2)
// R(0) = R_P and R(180) = R_AP hold exactly for any chi >= 0.
struct JunctionParams {
  double r_p = 2652.5823848649224;   // parallel resistance, ohm
  double r_ap = 5305.1647697298448;  // antiparallel resistance, ohm
  double chi = 1.0;                  // bias shape parameter
  double read_voltage = 0.1;         // sense bias for reported current, V
  double ra_product = 10e-12;        // metadata: RA, ohm m^2
};

void validate(const JunctionParams& p, std::vector<std::string>& out,
              const std::string& prefix = "junction");

double resistance_from_angle(const JunctionParams& j, double theta_deg);

// Full device: free layer + fixed layer dipole + two piezo gates.
// Gate V2 stresses the major axis (x), gate V3 the minor axis (y).
// The fixed layer lies in plane at +45 deg azimuth; its stray field at the
// free layer points opposite to it (antiparallel coupling).
struct DeviceConfig {
  MagnetParams magnet;
  PiezoConfig piezo;
  JunctionParams junction;
  double dipole_field_t = 7.05e-3;      // |B| of the fixed-layer stray field
  double fixed_axis_azimuth_deg = 45.0;
  double stress_limit = 250e6;          // Pa, validation bound per axis
  int demag_resolution = 256;

  Vec3 fixed_axis() const;
  Vec3 dipole_vector() const;  // tesla, -|B| * fixed_axis()
  // Demag factors for the current geometry, computed once and cached.
  const Vec3& demag() const;

 private:
  mutable std::optional<Vec3> demag_cache_;
};

void validate(const DeviceConfig& c, std::vector<std::string>& out,
              const std::string& prefix = "device");

// Gate voltage -> compressive stress on the gated axis, Pa.
// Errors if |v| exceeds the piezo breakdown voltage.
double voltage_to_stress(const DeviceConfig& c, double v);

// Both gates at once, checked against the device stress limit.
StressState stress_from_voltages(const DeviceConfig& c, double v2, double v3);

struct SteadyAngle {
  double theta_deg = 0.0;
  bool converged = false;
  double settle_time = 0.0;
};

// Relax the free layer under the given gate voltages from `initial`
// (defaults to m = (-1, 0, 0), i.e. theta = 135 from the +45 fixed axis).
SteadyAngle steady_angle(const DeviceConfig& c, double v2, double v3,
                         const SimOptions& options,
                         const MagState& initial = MagState{});

struct TransferPoint {
  double v2 = 0.0, v3 = 0.0;
  double theta_deg = 0.0;
  double r_ohm = 0.0;
  double i1_a = 0.0;
  double t_k = 0.0;
};

struct TransferCurve {
  std::vector<TransferPoint> points;
  // Per-point standard deviation across repeats (empty for T = 0 runs).
  std::vector<double> theta_std;
  std::vector<double> r_std;
  int repeats = 1;
};

// Sweep V2 over [v2_min, v2_max] (n_points >= 16) at fixed V3. At T > 0 each
// point averages `repeats` independent thermal runs (per-point, per-repeat
// RNG streams derived from options.rng_seed); dispersion is recorded in the
// *_std vectors. n_threads = 0 picks the hardware default.
TransferCurve transfer_curve(const DeviceConfig& c, double v2_min,
                             double v2_max, int n_points, double v3,
                             const SimOptions& options, int repeats = 16,
                             int n_threads = 0);

struct ValleyStats {
  double center_v2 = 0.0;   // parabolic-refined location of the peak
  double r_peak = 0.0;      // refined peak resistance
  double r_floor_02 = 0.0;  // worse (higher) of R at center +/- 0.2 V
  double r_floor_04 = 0.0;  // worse of R at center +/- 0.4 V
  double r_min = 0.0;       // curve minimum
  double fwhm_v = 0.0;      // width where R - r_min >= half the peak rise
};

// Locates the resistance peak of a V2 sweep (the "match valley" between the
// low-resistance floors). Errors if the curve is monotone (no interior peak).
// Floor offsets falling outside the sweep are clamped to the nearer end.
ValleyStats characterize_valley(const TransferCurve& curve);
ValleyStats characterize_valley(const DeviceConfig& c, double v3, int n_points,
                                const SimOptions& options);

// Confinement rule: the near floors at center +/- 0.2 V must not rise above
// the curve minimum by more than half the peak excursion.
bool encoding_margin_ok(const ValleyStats& v);

struct CalibrationResult {
  double v_feedback = 0.0;            // offset: center_v2 = v3 - v_feedback
  std::vector<double> v3_levels;
  std::vector<double> centers;        // valley center per level
  double max_residual_v = 0.0;        // worst |center - (v3 - v_feedback)|
};

// Fits the feedback offset from valley centers measured at several V3
// levels (unit slope fixed). Errors if centers are not strictly increasing.
CalibrationResult calibrate_offset(const DeviceConfig& c,
                                   const std::vector<double>& v3_levels,
                                   int n_points, const SimOptions& options);

}  // namespace smtjsim
