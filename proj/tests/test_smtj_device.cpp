#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "smtjsim/device.hpp"
#include "smtjsim/table.hpp"
#include "table_fixture.hpp"

using namespace smtjsim;

namespace {

JunctionParams reference_junction() {
  JunctionParams j;
  j.r_p = 2650.0;
  j.r_ap = 5300.0;
  j.chi = 1.0;
  return j;
}

}  // namespace

TEST_CASE("resistance law: endpoints, closed form, symmetry, bounds") {
  JunctionParams j = reference_junction();
  CHECK(resistance_from_angle(j, 0.0) == doctest::Approx(j.r_p).epsilon(1e-12));
  CHECK(resistance_from_angle(j, 360.0) ==
        doctest::Approx(j.r_p).epsilon(1e-12));
  CHECK(resistance_from_angle(j, 180.0) ==
        doctest::Approx(j.r_ap).epsilon(1e-12));

  // Closed form at 135 degrees, chi = 1: R = R_P (24 + 4 sqrt 2) / 17.
  double expect = 2650.0 * (24.0 + 4.0 * std::sqrt(2.0)) / 17.0;
  CHECK(resistance_from_angle(j, 135.0) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(resistance_from_angle(j, 225.0) ==
        doctest::Approx(expect).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 360.0);
  for (int i = 0; i < 50; ++i) {
    double t = ang(rng);
    CHECK(resistance_from_angle(j, t) ==
          doctest::Approx(resistance_from_angle(j, 360.0 - t)).epsilon(1e-12));
  }

  // Bounds and monotonicity on a fine grid over the rising half.
  double prev = resistance_from_angle(j, 0.0);
  for (int i = 1; i <= 1800; ++i) {
    double r = resistance_from_angle(j, 0.1 * i);
    CHECK(r >= j.r_p);
    CHECK(r <= j.r_ap);
    CHECK(r > prev);  // strictly increasing on (0, 180]
    prev = r;
  }
}

TEST_CASE("junction validation enforces the chi consistency contract") {
  std::vector<std::string> diag;
  validate(JunctionParams{}, diag);  // defaults: chi = 1 = (r_ap - r_p)/r_p
  CHECK(diag.empty());

  JunctionParams j;
  j.chi = 1.0 + 1e-6;
  diag.clear();
  validate(j, diag);
  CHECK(diag.size() == 1);

  j = JunctionParams{};
  j.r_ap = j.r_p;  // no TMR window
  diag.clear();
  validate(j, diag);
  CHECK(!diag.empty());

  j = JunctionParams{};
  j.read_voltage = 0.0;
  diag.clear();
  validate(j, diag);
  CHECK(diag.size() == 1);
}

TEST_CASE("piezo conversion: signed stress examples and breakdown guard") {
  DeviceConfig c;
  CHECK(voltage_to_stress(c, 3.7e-3) == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(voltage_to_stress(c, 0.0) == 0.0);
  CHECK(voltage_to_stress(c, -7.4e-3) ==
        doctest::Approx(-2e6).epsilon(1e-12));
  // Full volt: 270.27 MPa, the device-level scale factor.
  CHECK(voltage_to_stress(c, 1.0) ==
        doctest::Approx(1e7 / 0.037).epsilon(1e-12));
  CHECK_THROWS_AS(voltage_to_stress(c, 1.0001), Error);
  bool threw = false;
  try {
    voltage_to_stress(c, -1.5);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::kValidation);
  }
  CHECK(threw);
  // Within breakdown but beyond the configured stress limit (250 MPa).
  CHECK_THROWS_AS(stress_from_voltages(c, 0.95, 0.0), Error);
  StressState ok = stress_from_voltages(c, 0.9, -0.9);
  CHECK(ok.sigma_major == doctest::Approx(0.9e7 / 0.037));
  CHECK(ok.sigma_minor == doctest::Approx(-0.9e7 / 0.037));
}

TEST_CASE("piezo and device validation bounds") {
  DeviceConfig c;
  std::vector<std::string> diag;
  validate(c, diag);
  CHECK(diag.empty());

  c.piezo.capacitance = 0.5e-15;  // below the 1-2 fF window
  c.piezo.electrode_distance = 250e-9;  // above 2 * electrode_edge
  c.fixed_axis_azimuth_deg = 95.0;
  diag.clear();
  validate(c, diag);
  CHECK(diag.size() == 3);

  DeviceConfig d;
  d.fixed_axis_azimuth_deg = 0.0;  // skew must be strictly inside (0, 90)
  diag.clear();
  validate(d, diag);
  CHECK(diag.size() == 1);
}

TEST_CASE("steady angles: frozen anchors of the transfer characteristic") {
  DeviceConfig c;
  SimOptions o;
  SteadyAngle rest = steady_angle(c, 0.0, 0.0, o);
  CHECK(rest.converged);
  CHECK(std::abs(rest.theta_deg - 139.218) < 0.01);

  CHECK(std::abs(steady_angle(c, -0.1, 0.0, o).theta_deg - 136.797) < 0.01);
  // At the balanced drive the in-plane anisotropy cancels and the dipole
  // pins the free layer antiparallel to the fixed axis.
  CHECK(std::abs(steady_angle(c, 0.068817, 0.0, o).theta_deg - 180.0) < 0.1);
  CHECK(std::abs(steady_angle(c, 0.5, 0.0, o).theta_deg - 224.283) < 0.05);
}

TEST_CASE("transfer curve: structure, current law, determinism") {
  DeviceConfig c;
  SimOptions o;
  TransferCurve t = transfer_curve(c, -0.1, 0.7, 33, 0.0, o);
  REQUIRE(t.points.size() == 33);
  CHECK(t.repeats == 1);  // T = 0 collapses the repeat loop
  double step = 0.8 / 32;
  for (size_t i = 0; i < t.points.size(); ++i) {
    const TransferPoint& p = t.points[i];
    CHECK(p.v2 == doctest::Approx(-0.1 + i * step).epsilon(1e-12));
    CHECK(p.v3 == 0.0);
    CHECK(p.t_k == 0.0);
    CHECK(p.i1_a ==
          doctest::Approx(c.junction.read_voltage / p.r_ohm).epsilon(1e-12));
    CHECK(t.theta_std[i] == 0.0);
    CHECK(t.r_std[i] == 0.0);
  }
  TransferCurve again = transfer_curve(c, -0.1, 0.7, 33, 0.0, o);
  for (size_t i = 0; i < t.points.size(); ++i) {
    CHECK(t.points[i].theta_deg == again.points[i].theta_deg);
    CHECK(t.points[i].r_ohm == again.points[i].r_ohm);
  }

  DeviceConfig doubled = c;
  doubled.junction.read_voltage = 2.0 * c.junction.read_voltage;
  TransferCurve t2 = transfer_curve(doubled, -0.1, 0.7, 33, 0.0, o);
  for (size_t i = 0; i < t.points.size(); ++i)
    CHECK(t2.points[i].i1_a ==
          doctest::Approx(2.0 * t.points[i].i1_a).epsilon(1e-12));
}

TEST_CASE("transfer curve rejects malformed sweeps") {
  DeviceConfig c;
  SimOptions o;
  CHECK_THROWS_AS(transfer_curve(c, -0.1, 0.7, 8, 0.0, o), Error);
  CHECK_THROWS_AS(transfer_curve(c, 0.4, 0.4, 33, 0.0, o), Error);
  CHECK_THROWS_AS(transfer_curve(c, -0.1, 0.7, 33, 0.0, o, 0), Error);
}

TEST_CASE("transfer curve at 300 K: dispersion, seeds, 0 K agreement") {
  DeviceConfig c;
  SimOptions cold;
  SimOptions hot;
  hot.temperature = 300.0;
  hot.max_time = 20e-9;  // thermal runs take the full horizon; keep it short
  // Stop short of ~0.5 V: the thermal barrier toward the out-of-plane
  // saddle shrinks there and rare hops would skew a 6-repeat mean.
  TransferCurve base = transfer_curve(c, 0.0, 0.45, 17, 0.0, cold);
  TransferCurve warm = transfer_curve(c, 0.0, 0.45, 17, 0.0, hot, 6);
  CHECK(warm.repeats == 6);
  bool any_spread = false;
  for (size_t i = 0; i < warm.points.size(); ++i) {
    CHECK(warm.points[i].t_k == 300.0);
    if (warm.theta_std[i] > 0.0 && warm.r_std[i] > 0.0) any_spread = true;
    // Thermal mean tracks the deterministic curve.
    CHECK(std::abs(warm.points[i].r_ohm - base.points[i].r_ohm) <
          0.05 * base.points[i].r_ohm);
  }
  CHECK(any_spread);

  TransferCurve rerun = transfer_curve(c, 0.0, 0.45, 17, 0.0, hot, 6);
  for (size_t i = 0; i < warm.points.size(); ++i)
    CHECK(warm.points[i].r_ohm == rerun.points[i].r_ohm);

  SimOptions other = hot;
  other.rng_seed = 99;
  TransferCurve shifted = transfer_curve(c, 0.0, 0.45, 17, 0.0, other, 6);
  bool any_diff = false;
  for (size_t i = 0; i < warm.points.size(); ++i)
    if (shifted.points[i].r_ohm != warm.points[i].r_ohm) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("valley arithmetic on synthetic curves matches hand values") {
  auto make_curve = [](std::vector<double> r) {
    TransferCurve c;
    for (size_t i = 0; i < r.size(); ++i) {
      TransferPoint p;
      p.v2 = static_cast<double>(i);
      p.r_ohm = r[i];
      c.points.push_back(p);
    }
    c.theta_std.assign(r.size(), 0.0);
    c.r_std.assign(r.size(), 0.0);
    return c;
  };

  // Symmetric peak: vertex stays on the node, everything interpolates.
  ValleyStats s = characterize_valley(make_curve({1, 2, 5, 2, 1}));
  CHECK(s.center_v2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.r_peak == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.r_min == 1.0);
  // +/- 0.2 around the vertex cuts the straight flanks at 4.4.
  CHECK(s.r_floor_02 == doctest::Approx(4.4).epsilon(1e-12));
  CHECK(s.r_floor_04 == doctest::Approx(3.8).epsilon(1e-12));
  // Half rise = 3, crossed at 4/3 and 8/3.
  CHECK(s.fwhm_v == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  // Asymmetric neighbors: parabolic vertex shifts a quarter step.
  ValleyStats a = characterize_valley(make_curve({1, 2, 5, 4, 1}));
  CHECK(a.center_v2 == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(a.r_peak == doctest::Approx(5.125).epsilon(1e-12));

  // Monotone curve has no interior peak.
  CHECK_THROWS_AS(characterize_valley(make_curve({1, 2, 3, 4, 5})), Error);
  // Degenerate input length.
  CHECK_THROWS_AS(characterize_valley(make_curve({1, 5, 1})), Error);
}

TEST_CASE("encoding margin predicate sits exactly at half the rise") {
  ValleyStats v;
  v.r_min = 4000.0;
  v.r_peak = 5000.0;
  v.r_floor_02 = 4500.0;
  CHECK(encoding_margin_ok(v));
  v.r_floor_02 = 4500.001;
  CHECK(!encoding_margin_ok(v));
}

TEST_CASE("valley characterization at the bare gate level") {
  DeviceConfig c;
  SimOptions o;
  ValleyStats v = characterize_valley(c, 0.0, 161, o);
  CHECK(std::abs(v.center_v2 - 0.068817) < 0.002);
  CHECK(v.r_peak == doctest::Approx(c.junction.r_ap).epsilon(0.01));
  CHECK(v.r_min < v.r_floor_02);
  CHECK(v.r_floor_02 < v.r_peak);
  // Both +/- 0.2 and +/- 0.4 left probes clamp to the same sweep edge,
  // which dominates the right-side floor, so the two floors coincide.
  CHECK(v.r_floor_04 == doctest::Approx(v.r_floor_02).epsilon(1e-12));
  CHECK(v.fwhm_v > 0.0);
  CHECK(v.fwhm_v < 0.8);
}

TEST_CASE("valley characterization rejects a curve without an interior peak") {
  DeviceConfig c;
  SimOptions o;
  TransferCurve flank = transfer_curve(c, 0.3, 0.5, 21, 0.0, o);
  CHECK_THROWS_AS(characterize_valley(flank), Error);
  try {
    characterize_valley(flank);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNumerical);
  }
}

TEST_CASE("valley centers track the stored gate level one for one") {
  DeviceConfig c;
  SimOptions o;
  const double levels[3] = {0.131183, 0.331183, 0.531183};
  const double targets[3] = {0.2, 0.4, 0.6};
  double prev = -1.0;
  for (int i = 0; i < 3; ++i) {
    ValleyStats v = characterize_valley(c, levels[i], 161, o);
    CAPTURE(levels[i]);
    CHECK(std::abs(v.center_v2 - targets[i]) < 0.005);
    CHECK(v.r_peak == doctest::Approx(c.junction.r_ap).epsilon(0.01));
    CHECK(v.center_v2 > prev);
    CHECK(v.r_min < v.r_floor_04);
    CHECK(v.r_floor_02 < v.r_peak);
    prev = v.center_v2;
  }
  // At the highest stored level the minor-axis compression keeps the whole
  // sweep on one attractor branch and the near floors stay confined.
  CHECK(encoding_margin_ok(characterize_valley(c, 0.531183, 161, o)));
}

TEST_CASE("calibration recovers the feedback offset and closes the loop") {
  DeviceConfig c;
  SimOptions o;
  CalibrationResult cal = calibrate_offset(c, {0.1, 0.2, 0.3}, 129, o);
  CHECK(std::abs(cal.v_feedback - (-0.068817)) < 5e-4);
  CHECK(cal.max_residual_v < 2e-3);
  REQUIRE(cal.centers.size() == 3);
  CHECK(cal.centers[0] < cal.centers[1]);
  CHECK(cal.centers[1] < cal.centers[2]);

  // Closed loop: programming v3 = target + v_feedback parks the valley
  // center on the target within one encoding step margin.
  for (double target : {0.2, 0.4}) {
    ValleyStats v = characterize_valley(c, target + cal.v_feedback, 129, o);
    CHECK(std::abs(v.center_v2 - target) < 0.025);
  }
}

TEST_CASE("calibration input validation and ordering guard") {
  DeviceConfig c;
  SimOptions o;
  CHECK_THROWS_AS(calibrate_offset(c, {0.1}, 97, o), Error);
  CHECK_THROWS_AS(calibrate_offset(c, {0.3, 0.1}, 97, o), Error);
}

TEST_CASE("dipole sensitivity: ordered rest angles, pinned valley centers") {
  SimOptions o;
  double rest_prev = 0.0;
  double centers[3];
  double rests[3];
  const double fields[3] = {6e-3, 7.05e-3, 8e-3};
  for (int i = 0; i < 3; ++i) {
    DeviceConfig c;
    c.dipole_field_t = fields[i];
    rests[i] = steady_angle(c, 0.0, 0.0, o).theta_deg;
    centers[i] = characterize_valley(c, 0.131183, 129, o).center_v2;
    CHECK(rests[i] > rest_prev);  // stronger dipole pulls theta further
    rest_prev = rests[i];
  }
  CHECK(std::abs(rests[1] - 139.218) < 0.01);
  // The valley center marks the in-plane anisotropy balance, which the
  // dipole magnitude does not move.
  CHECK(std::abs(centers[0] - centers[1]) < 1e-3);
  CHECK(std::abs(centers[1] - centers[2]) < 1e-3);
}

TEST_CASE("resistance table: nodes exact, interpolation bounded") {
  DeviceConfig c;
  SimOptions o;
  ResistanceTable t =
      build_resistance_table(c, -0.1, 0.5, -0.1, 0.7, 0.025, o);
  REQUIRE(t.n2 == 25);
  REQUIRE(t.n3 == 33);
  CHECK(t.v2_max() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.v3_max() == doctest::Approx(0.7).epsilon(1e-12));

  // Nodes reproduce the direct physics path exactly.
  for (int i3 : {0, 7, 32}) {
    for (int i2 : {0, 11, 24}) {
      double v2 = t.v2_min + i2 * t.v2_step;
      double v3 = t.v3_min + i3 * t.v3_step;
      SteadyAngle a = steady_angle(c, v2, v3, o);
      double direct = resistance_from_angle(c.junction, a.theta_deg);
      CHECK(t.at(i2, i3) == direct);
      CHECK(t.lookup(v2, v3) == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  // Bilinear interpolation stays inside the corner hull of its cell.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    int i2 = static_cast<int>(rng() % (t.n2 - 1));
    int i3 = static_cast<int>(rng() % (t.n3 - 1));
    double v2 = t.v2_min + (i2 + u(rng)) * t.v2_step;
    double v3 = t.v3_min + (i3 + u(rng)) * t.v3_step;
    double lo = t.at(i2, i3), hi = lo;
    for (int d3 = 0; d3 <= 1; ++d3) {
      for (int d2 = 0; d2 <= 1; ++d2) {
        lo = std::min(lo, t.at(i2 + d2, i3 + d3));
        hi = std::max(hi, t.at(i2 + d2, i3 + d3));
      }
    }
    double r = t.lookup(v2, v3);
    CHECK(r >= lo - 1e-9);
    CHECK(r <= hi + 1e-9);
  }

  CHECK_THROWS_AS(t.lookup(0.51, 0.0), Error);
  CHECK_THROWS_AS(t.lookup(0.0, -0.11), Error);
  CHECK_THROWS_AS(build_resistance_table(c, -0.1, 0.5, -0.1, 0.7, 0.03, o),
                  Error);
}

TEST_CASE("resistance table: random probes match direct physics within 2%") {
  const ResistanceTable& t = testfix::shared_table();
  DeviceConfig c;
  SimOptions o;
  std::mt19937_64 rng(2026);
  // Above ~0.58 V on the search gate the reset protocol crosses the
  // out-of-plane saddle and the landing basin alternates point to point,
  // so interpolation is only meaningful below that seam.
  std::uniform_real_distribution<double> u2(-0.1, 0.55);
  std::uniform_real_distribution<double> u3(-0.1, 0.7);
  for (int probe = 0; probe < 20; ++probe) {
    double v2 = u2(rng), v3 = u3(rng);
    SteadyAngle a = steady_angle(c, v2, v3, o);
    double direct = resistance_from_angle(c.junction, a.theta_deg);
    CAPTURE(v2);
    CAPTURE(v3);
    CHECK(std::abs(t.lookup(v2, v3) - direct) < 0.02 * direct);
  }
}

TEST_CASE("resistance table: save/load round trip preserves everything") {
  DeviceConfig c;
  SimOptions o;
  ResistanceTable t = build_resistance_table(c, 0.0, 0.1, 0.0, 0.1, 0.025, o);
  t.meta = "round-trip-check";
  const char* path = "test_table_roundtrip.json";
  save_table(t, path);
  ResistanceTable r = load_table(path);
  CHECK(r.meta == t.meta);
  CHECK(r.n2 == t.n2);
  CHECK(r.n3 == t.n3);
  CHECK(r.v2_min == t.v2_min);
  CHECK(r.v2_step == t.v2_step);
  CHECK(r.v3_min == t.v3_min);
  CHECK(r.v3_step == t.v3_step);
  REQUIRE(r.r_ohm.size() == t.r_ohm.size());
  for (size_t i = 0; i < t.r_ohm.size(); ++i) CHECK(r.r_ohm[i] == t.r_ohm[i]);
  CHECK_THROWS_AS(load_table("no_such_table_file.json"), Error);
  std::remove(path);
}
