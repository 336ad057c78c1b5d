#pragma once

#include <string>
#include <vector>

#include "smtjsim/device.hpp"
#include "smtjsim/table.hpp"
#include "smtjsim/ternary.hpp"

namespace smtjsim {

// Voltage encoding of ternary symbols. Search symbols drive the V2 gate;
// stored symbols set the V3 gate, shifted by the calibrated feedback offset
// so each stored level parks its match valley at the corresponding search
// voltage window.
struct EncodingScheme {
  double search_x = 0.0, search_zero = 0.2, search_one = 0.4;   // V2 levels
  double target_one = 0.2, target_zero = 0.4, target_x = 0.6;   // valley centers
  double v_feedback = -0.068817;  // center_v2 = v3 - v_feedback

  double search_voltage(Trit t) const;
  double target_center(Trit t) const;
  double stored_gate_voltage(Trit t) const;  // target + v_feedback
};

void validate(const EncodingScheme& e, std::vector<std::string>& out,
              const std::string& prefix = "encoding");

// Single-cell resistance for a stored/search symbol pair, via the table.
double cell_resistance(const ResistanceTable& table, const EncodingScheme& e,
                       Trit stored, Trit search);

// Threshold separating single-cell match (low R) from mismatch (high R):
// midpoint of the worst match resistance (the worse near floor) and the
// mismatch resistance (the valley peak).
double cell_threshold(const ValleyStats& v);

bool classify_cell(double r_ohm, double threshold);  // true = match

// Stored-node charge decay through gate leakage: v * exp(-dt / (r_leak c)).
double decay_storage(double v, double dt, double r_leak, double c);

// Local refresh MTJ pair. Two binary MTJs per cell hold the stored symbol;
// they share write current but switch at different thresholds, so a timed
// reverse pulse flips only the faster device.
struct RefreshMtjParams {
  double r_low = 2e3, r_high = 20e3;  // ohm
  double i_c1 = 50e-6, i_c2 = 80e-6;  // critical currents, i_c1 < i_c2
  double t_sw1 = 1e-9, t_sw2 = 3e-9;  // switch times at write bias, t_sw1 < t_sw2
};

void validate(const RefreshMtjParams& p, std::vector<std::string>& out,
              const std::string& prefix = "refresh");

struct ProgramStep {
  std::string pulse;  // description of the applied pulse
  double r1 = 0.0, r2 = 0.0;  // pair state after the pulse
};

struct ProgramResult {
  double r1 = 0.0, r2 = 0.0;
  std::vector<ProgramStep> trace;
};

// Programs the pair to the target symbol's state:
//   '1' -> (r_high, r_high), '0' -> (r_high, r_low), 'X' -> (r_low, r_low).
// Protocol: joint set pulse to (r_low, r_low), then a reverse pulse, full
// width for '1' or timed t_sw1 < w < t_sw2 for '0' (flips device 1 only).
// (r_low, r_high) is unreachable. Errors if t_sw1 >= t_sw2.
ProgramResult program_local_cell(const RefreshMtjParams& p, Trit target);

// Star restore network: V_DD feeds the storage node through trim resistor A
// in series with MTJ 1 and through trim C in series with MTJ 2; bleed
// resistor B ties the node to ground. The three pair states then regenerate
// the three stored gate levels.
struct RefreshDivider {
  double r_a = 0.0, r_b = 0.0, r_c = 0.0;  // ohm
  double v_dd = 1.0;
};

// Solves the trims so the node voltage equals stored_gate_voltage(t) for all
// three symbols. Throws a numerical-infeasibility error when no positive
// resistor set exists (requires r_high/r_low to be large enough).
RefreshDivider solve_refresh_divider(const RefreshMtjParams& p,
                                     const EncodingScheme& e,
                                     double v_dd = 1.0);

// Node voltage produced by the divider for the pair state of `stored`.
double refresh_voltage(const RefreshDivider& d, const RefreshMtjParams& p,
                       Trit stored);

}  // namespace smtjsim
