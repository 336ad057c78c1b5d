#include "smtjsim/cell.hpp"

#include <cmath>
#include <sstream>

namespace smtjsim {

double EncodingScheme::search_voltage(Trit t) const {
  switch (t) {
    case Trit::kZero: return search_zero;
    case Trit::kOne: return search_one;
    default: return search_x;
  }
}

double EncodingScheme::target_center(Trit t) const {
  switch (t) {
    case Trit::kZero: return target_zero;
    case Trit::kOne: return target_one;
    default: return target_x;
  }
}

double EncodingScheme::stored_gate_voltage(Trit t) const {
  return target_center(t) + v_feedback;
}

void validate(const EncodingScheme& e, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (!(e.search_x < e.search_zero && e.search_zero < e.search_one))
    bad("search levels must be ordered X < 0 < 1");
  if (!(e.target_one < e.target_zero && e.target_zero < e.target_x))
    bad("target centers must be ordered 1 < 0 < X");
  if (!std::isfinite(e.v_feedback)) bad("v_feedback must be finite");
}

double cell_resistance(const ResistanceTable& table, const EncodingScheme& e,
                       Trit stored, Trit search) {
  return table.lookup(e.search_voltage(search), e.stored_gate_voltage(stored));
}

double cell_threshold(const ValleyStats& v) {
  return 0.5 * (v.r_floor_02 + v.r_peak);
}

bool classify_cell(double r_ohm, double threshold) {
  return r_ohm < threshold;
}

double decay_storage(double v, double dt, double r_leak, double c) {
  if (!(r_leak > 0) || !(c > 0))
    throw_validation("decay_storage: r_leak and c must be > 0");
  if (!(dt >= 0)) throw_validation("decay_storage: dt must be >= 0");
  return v * std::exp(-dt / (r_leak * c));
}

void validate(const RefreshMtjParams& p, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (!(p.r_low > 0)) bad("r_low must be > 0");
  if (!(p.r_high > p.r_low)) bad("r_high must exceed r_low");
  if (!(p.i_c1 > 0 && p.i_c2 > p.i_c1)) bad("need 0 < i_c1 < i_c2");
  if (!(p.t_sw1 > 0 && p.t_sw2 > p.t_sw1)) bad("need 0 < t_sw1 < t_sw2");
}

ProgramResult program_local_cell(const RefreshMtjParams& p, Trit target) {
  std::vector<std::string> diag;
  validate(p, diag, "program_local_cell");
  if (!diag.empty()) throw_validation(diag.front());

  ProgramResult r;
  r.r1 = p.r_low;
  r.r2 = p.r_low;
  r.trace.push_back({"set pulse: both devices to low state", r.r1, r.r2});
  if (target == Trit::kZero) {
    // Timed reverse pulse, long enough for the fast device only.
    double w = 0.5 * (p.t_sw1 + p.t_sw2);
    std::ostringstream os;
    os << "reverse pulse width " << w << " s (t_sw1 < w < t_sw2): device 1 "
          "flips high";
    r.r1 = p.r_high;
    r.trace.push_back({os.str(), r.r1, r.r2});
  } else if (target == Trit::kOne) {
    std::ostringstream os;
    os << "reverse pulse width " << 2.0 * p.t_sw2
       << " s (> t_sw2): both devices flip high";
    r.r1 = p.r_high;
    r.r2 = p.r_high;
    r.trace.push_back({os.str(), r.r1, r.r2});
  }
  return r;
}

namespace {

struct PairState {
  double r1, r2;
};

PairState pair_state(const RefreshMtjParams& p, Trit stored) {
  switch (stored) {
    case Trit::kOne: return {p.r_high, p.r_high};
    case Trit::kZero: return {p.r_high, p.r_low};
    default: return {p.r_low, p.r_low};
  }
}

double node_voltage(const RefreshDivider& d, const PairState& s) {
  double g1 = 1.0 / (d.r_a + s.r1);
  double g2 = 1.0 / (d.r_c + s.r2);
  return d.v_dd * (g1 + g2) / (g1 + g2 + 1.0 / d.r_b);
}

// Positive root of x^2 + (h + l) x + (l h - (h - l)/dq) = 0, the series trim
// that realizes a conductance step (h - l)/((x + l)(x + h)) = dq.
double trim_from_step(double h, double l, double dq) {
  double disc = (h - l) * (h - l) + 4.0 * (h - l) / dq;
  return 0.5 * (-(h + l) + std::sqrt(disc));
}

}  // namespace

double refresh_voltage(const RefreshDivider& d, const RefreshMtjParams& p,
                       Trit stored) {
  return node_voltage(d, pair_state(p, stored));
}

RefreshDivider solve_refresh_divider(const RefreshMtjParams& p,
                                     const EncodingScheme& e, double v_dd) {
  std::vector<std::string> diag;
  validate(p, diag, "refresh divider");
  if (!diag.empty()) throw_validation(diag.front());
  const double h = p.r_high, l = p.r_low;
  const double t1 = e.stored_gate_voltage(Trit::kOne);
  const double t0 = e.stored_gate_voltage(Trit::kZero);
  const double tx = e.stored_gate_voltage(Trit::kX);
  if (!(0.0 < t1 && t1 < t0 && t0 < tx && tx < v_dd))
    throw_validation(
        "solve_refresh_divider: stored levels must satisfy 0 < V(1) < V(0) < "
        "V(X) < v_dd");

  // Node equation per state k: sum of source-branch conductances G_k
  // satisfies G_k = gb * q_k with q_k = t_k / (v_dd - t_k), gb = 1/r_b.
  // Differences between states isolate one trim each:
  //   G(0) - G(1) = 1/(r_c+l) - 1/(r_c+h),  G(X) - G(0) = 1/(r_a+l) - 1/(r_a+h)
  // leaving one residual equation in gb, solved by bisection.
  const double q1 = t1 / (v_dd - t1);
  const double q0 = t0 / (v_dd - t0);
  const double qx = tx / (v_dd - tx);

  auto residual = [&](double gb, double& ra, double& rc) {
    rc = trim_from_step(h, l, gb * (q0 - q1));
    ra = trim_from_step(h, l, gb * (qx - q0));
    if (!(rc > 0.0) || !(ra > 0.0)) return std::nan("");
    return 1.0 / (ra + h) + 1.0 / (rc + l) - gb * q0;
  };

  // Log-grid scan for a sign change, then bisection.
  double lo = 0.0, hi = 0.0, f_lo = 0.0;
  double prev_gb = 0.0, prev_f = std::nan("");
  for (int i = 0; i <= 400; ++i) {
    double gb = std::pow(10.0, -9.0 + 10.0 * i / 400.0);
    double ra, rc;
    double f = residual(gb, ra, rc);
    if (std::isfinite(f) && std::isfinite(prev_f) &&
        ((f < 0) != (prev_f < 0))) {
      lo = prev_gb;
      hi = gb;
      f_lo = prev_f;
      break;
    }
    prev_gb = gb;
    prev_f = f;
  }
  if (hi == 0.0)
    throw_numerical(
        "solve_refresh_divider: no positive trim solution (r_high/r_low "
        "contrast too small for the requested levels)");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double ra, rc;
    double f = residual(mid, ra, rc);
    if (!std::isfinite(f)) { lo = mid; continue; }
    if ((f < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }

  RefreshDivider d;
  d.v_dd = v_dd;
  double gb = 0.5 * (lo + hi);
  double ra, rc;
  residual(gb, ra, rc);
  d.r_a = ra;
  d.r_c = rc;
  d.r_b = 1.0 / gb;
  if (!(d.r_a > 0 && d.r_b > 0 && d.r_c > 0) || !std::isfinite(d.r_a) ||
      !std::isfinite(d.r_b) || !std::isfinite(d.r_c))
    throw_numerical("solve_refresh_divider: solver produced invalid trims");

  // Verify all three regenerated levels.
  double worst = 0.0;
  worst = std::max(worst, std::abs(refresh_voltage(d, p, Trit::kOne) - t1));
  worst = std::max(worst, std::abs(refresh_voltage(d, p, Trit::kZero) - t0));
  worst = std::max(worst, std::abs(refresh_voltage(d, p, Trit::kX) - tx));
  if (worst > 1e-9 * v_dd)
    throw_numerical("solve_refresh_divider: residual level error " +
                    std::to_string(worst) + " V");
  return d;
}

}  // namespace smtjsim
