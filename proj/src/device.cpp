#include "smtjsim/device.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smtjsim/demag.hpp"
#include "smtjsim/parallel.hpp"
#include "smtjsim/rng.hpp"

namespace smtjsim {

void validate(const PiezoConfig& p, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (!(p.gap > 0)) bad("gap must be > 0");
  if (!(p.field_per_stress > 0)) bad("field_per_stress must be > 0");
  if (!(p.capacitance >= 1e-15 && p.capacitance <= 2e-15))
    bad("capacitance must be in [1e-15, 2e-15]");
  if (!(p.electrode_edge > 0)) bad("electrode_edge must be > 0");
  if (!(p.electrode_distance >= p.electrode_edge &&
        p.electrode_distance <= 2 * p.electrode_edge))
    bad("electrode_distance must be in [electrode_edge, 2*electrode_edge]");
  if (!(p.breakdown_voltage > 0)) bad("breakdown_voltage must be > 0");
}

void validate(const JunctionParams& p, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (!(p.r_p > 0)) bad("r_p must be > 0");
  if (!(p.r_ap > p.r_p)) bad("r_ap must exceed r_p");
  if (!(p.chi > 0)) bad("chi must be > 0");
  if (p.r_p > 0 && p.r_ap > p.r_p) {
    double expected = (p.r_ap - p.r_p) / p.r_p;
    if (!(std::abs(p.chi - expected) <= 1e-12 * expected))
      bad("chi must equal (r_ap - r_p) / r_p");
  }
  if (!(p.read_voltage > 0)) bad("read_voltage must be > 0");
}

double resistance_from_angle(const JunctionParams& j, double theta_deg) {
  double c = std::cos(deg2rad(theta_deg));
  return j.r_p + (j.r_ap - j.r_p) * (1.0 - c) / (j.chi * (1.0 + c) + 2.0);
}

Vec3 DeviceConfig::fixed_axis() const {
  double phi = deg2rad(fixed_axis_azimuth_deg);
  return Vec3(std::cos(phi), std::sin(phi), 0.0);
}

Vec3 DeviceConfig::dipole_vector() const {
  return -dipole_field_t * fixed_axis();
}

const Vec3& DeviceConfig::demag() const {
  if (!demag_cache_) demag_cache_ = demag_factors(magnet, demag_resolution);
  return *demag_cache_;
}

void validate(const DeviceConfig& c, std::vector<std::string>& out,
              const std::string& prefix) {
  validate(c.magnet, &out, prefix + ".magnet: ");
  validate(c.piezo, out, prefix + ".piezo");
  validate(c.junction, out, prefix + ".junction");
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (!(c.dipole_field_t >= 0)) bad("dipole_field_t must be >= 0");
  if (!(c.fixed_axis_azimuth_deg > 0 && c.fixed_axis_azimuth_deg < 90))
    bad("fixed_axis_azimuth_deg must be in (0, 90)");
  if (!(c.stress_limit > 0)) bad("stress_limit must be > 0");
  if (c.demag_resolution < 8) bad("demag_resolution must be >= 8");
}

double voltage_to_stress(const DeviceConfig& c, double v) {
  if (std::abs(v) > c.piezo.breakdown_voltage)
    throw_validation("gate voltage exceeds piezo breakdown voltage");
  return (v / c.piezo.gap) / c.piezo.field_per_stress;
}

StressState stress_from_voltages(const DeviceConfig& c, double v2, double v3) {
  StressState s;
  s.sigma_major = voltage_to_stress(c, v2);
  s.sigma_minor = voltage_to_stress(c, v3);
  std::vector<std::string> diag;
  validate(s, &diag, "stress: ", c.stress_limit);
  if (!diag.empty()) throw_validation(diag.front());
  return s;
}

SteadyAngle steady_angle(const DeviceConfig& c, double v2, double v3,
                         const SimOptions& options, const MagState& initial) {
  StressState s = stress_from_voltages(c, v2, v3);
  SteadyStateResult r = relax(c.magnet, c.demag(), s, c.dipole_vector(),
                              c.fixed_axis(), initial, options);
  return SteadyAngle{r.final_state.theta, r.converged, r.settle_time};
}

TransferCurve transfer_curve(const DeviceConfig& c, double v2_min,
                             double v2_max, int n_points, double v3,
                             const SimOptions& options, int repeats,
                             int n_threads) {
  if (n_points < 16) throw_validation("transfer_curve: n_points must be >= 16");
  if (!(v2_max > v2_min))
    throw_validation("transfer_curve: v2_max must exceed v2_min");
  if (repeats < 1) throw_validation("transfer_curve: repeats must be >= 1");
  if (options.temperature <= 0.0) repeats = 1;
  unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                   : default_threads();

  TransferCurve out;
  out.repeats = repeats;
  out.points.resize(n_points);
  out.theta_std.assign(n_points, 0.0);
  out.r_std.assign(n_points, 0.0);
  const double step = (v2_max - v2_min) / (n_points - 1);

  c.demag();  // fill the cache before worker threads share it
  parallel_for(static_cast<size_t>(n_points), workers, [&](size_t i) {
    double v2 = v2_min + static_cast<double>(i) * step;
    double sum_t = 0, sum_t2 = 0, sum_r = 0, sum_r2 = 0;
    for (int rep = 0; rep < repeats; ++rep) {
      SimOptions o = options;
      // Per-point, per-repeat stream: independent of threading layout.
      o.rng_seed = splitmix64(options.rng_seed +
                              (static_cast<std::uint64_t>(i) * repeats + rep +
                               1) *
                                  0x9E3779B97F4A7C15ULL);
      SteadyAngle sa = steady_angle(c, v2, v3, o);
      double r = resistance_from_angle(c.junction, sa.theta_deg);
      sum_t += sa.theta_deg;
      sum_t2 += sa.theta_deg * sa.theta_deg;
      sum_r += r;
      sum_r2 += r * r;
    }
    double n = repeats;
    TransferPoint& p = out.points[i];
    p.v2 = v2;
    p.v3 = v3;
    p.theta_deg = sum_t / n;
    p.r_ohm = sum_r / n;
    p.i1_a = c.junction.read_voltage / p.r_ohm;
    p.t_k = options.temperature;
    if (repeats > 1) {
      out.theta_std[i] = std::sqrt(
          std::max(0.0, (sum_t2 - sum_t * sum_t / n) / (n - 1.0)));
      out.r_std[i] =
          std::sqrt(std::max(0.0, (sum_r2 - sum_r * sum_r / n) / (n - 1.0)));
    }
  });
  return out;
}

namespace {

// Linear interpolation of R(v2) on the curve, clamped to the sweep ends.
double curve_r_at(const TransferCurve& c, double v2) {
  const auto& pts = c.points;
  if (v2 <= pts.front().v2) return pts.front().r_ohm;
  if (v2 >= pts.back().v2) return pts.back().r_ohm;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (v2 <= pts[i].v2) {
      double f = (v2 - pts[i - 1].v2) / (pts[i].v2 - pts[i - 1].v2);
      return pts[i - 1].r_ohm + f * (pts[i].r_ohm - pts[i - 1].r_ohm);
    }
  }
  return pts.back().r_ohm;
}

}  // namespace

ValleyStats characterize_valley(const TransferCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 5)
    throw_validation("characterize_valley: curve too short");
  size_t peak = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].r_ohm > pts[peak].r_ohm) peak = i;
  if (peak == 0 || peak + 1 == pts.size())
    throw_numerical(
        "characterize_valley: no interior resistance peak in sweep range");

  ValleyStats v;
  double rm = pts[peak - 1].r_ohm, r0 = pts[peak].r_ohm,
         rp = pts[peak + 1].r_ohm;
  double denom = rm - 2.0 * r0 + rp;
  double shift = denom < 0.0 ? 0.5 * (rm - rp) / denom : 0.0;
  double h = pts[peak + 1].v2 - pts[peak].v2;
  v.center_v2 = pts[peak].v2 + shift * h;
  v.r_peak = r0 - 0.25 * (rm - rp) * shift;

  v.r_min = pts[0].r_ohm;
  for (const auto& p : pts) v.r_min = std::min(v.r_min, p.r_ohm);
  v.r_floor_02 = std::max(curve_r_at(curve, v.center_v2 - 0.2),
                          curve_r_at(curve, v.center_v2 + 0.2));
  v.r_floor_04 = std::max(curve_r_at(curve, v.center_v2 - 0.4),
                          curve_r_at(curve, v.center_v2 + 0.4));

  // Full width at half the rise above the curve floor.
  double half = v.r_min + 0.5 * (v.r_peak - v.r_min);
  double left = pts.front().v2, right = pts.back().v2;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i].r_ohm, b = pts[i + 1].r_ohm;
    if (a < half && b >= half) {
      left = pts[i].v2 + (half - a) / (b - a) * (pts[i + 1].v2 - pts[i].v2);
      break;
    }
  }
  for (size_t i = pts.size() - 1; i > 0; --i) {
    double a = pts[i].r_ohm, b = pts[i - 1].r_ohm;
    if (a < half && b >= half) {
      right =
          pts[i].v2 + (half - a) / (b - a) * (pts[i - 1].v2 - pts[i].v2);
      break;
    }
  }
  v.fwhm_v = std::max(0.0, right - left);
  return v;
}

ValleyStats characterize_valley(const DeviceConfig& c, double v3, int n_points,
                                const SimOptions& options) {
  TransferCurve curve = transfer_curve(c, -0.1, 0.7, n_points, v3, options);
  return characterize_valley(curve);
}

bool encoding_margin_ok(const ValleyStats& v) {
  return v.r_floor_02 - v.r_min <= 0.5 * (v.r_peak - v.r_min);
}

CalibrationResult calibrate_offset(const DeviceConfig& c,
                                   const std::vector<double>& v3_levels,
                                   int n_points, const SimOptions& options) {
  if (v3_levels.size() < 2)
    throw_validation("calibrate_offset: need at least two v3 levels");
  CalibrationResult r;
  r.v3_levels = v3_levels;
  for (double v3 : v3_levels) {
    ValleyStats v = characterize_valley(c, v3, n_points, options);
    r.centers.push_back(v.center_v2);
  }
  for (size_t i = 1; i < r.centers.size(); ++i)
    if (!(r.centers[i] > r.centers[i - 1]))
      throw_numerical(
          "calibrate_offset: valley centers not strictly increasing in v3");
  double sum = 0.0;
  for (size_t i = 0; i < v3_levels.size(); ++i)
    sum += v3_levels[i] - r.centers[i];
  r.v_feedback = sum / static_cast<double>(v3_levels.size());
  for (size_t i = 0; i < v3_levels.size(); ++i)
    r.max_residual_v =
        std::max(r.max_residual_v,
                 std::abs(r.centers[i] - (v3_levels[i] - r.v_feedback)));
  return r;
}

}  // namespace smtjsim
