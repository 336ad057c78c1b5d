#pragma once

#include <string>
#include <vector>

#include "smtjsim/array.hpp"
#include "smtjsim/device.hpp"

namespace smtjsim {

struct MonteCarloResult {
  int n_trials = 0;
  int clockwise = 0;
  int anticlockwise = 0;
  int none = 0;                  // unresolved: |net rotation| below threshold
  double mean_theta_deg = 0.0;   // mean final angle
  double theta_std_deg = 0.0;    // sample stddev of final angles
  double mean_rotation_deg = 0.0;
  std::vector<double> final_theta_deg;  // per trial, trial-indexed
};

// Repeated thermal relaxations at fixed gate voltages. Trial k draws its
// noise from a stream derived from (options.rng_seed, k), so results are
// independent of thread count and identical across reruns.
MonteCarloResult monte_carlo_rotation(const DeviceConfig& c, double v2,
                                      double v3, const SimOptions& options,
                                      int n_trials, int n_threads = 0);

// Energy to slew one capacitive line through a voltage swing: c v^2.
double switching_energy(double capacitance, double delta_v);

struct EnergyModel {
  double search_line_c = 1e-15;      // per-cell line capacitance, F
  double senseamp_energy = 5e-15;    // per block sense, J
  double refresh_event_energy = 1e-12;  // per array refresh event, J
  double refresh_rate = 1e3;         // refresh events per second
  double settle_time = 5e-9;         // physical settling before sensing, s
  double sense_delay = 1e-9;         // sense amplifier latency, s
};

void validate(const EnergyModel& m, std::vector<std::string>& out,
              const std::string& prefix = "energy");

// Minimum physical time per search: settling plus sensing.
double physical_search_time(const EnergyModel& m);

// Dynamic energy of one search: every line whose voltage changes between
// consecutive search words dissipates (line C * n_columns) * dV^2, plus one
// sense per block per column.
double search_energy(const EnergyModel& m, const EncodingScheme& e,
                     const Word& previous, const Word& next, int n_columns,
                     int blocks_per_column);

struct EdpPoint {
  double frequency = 0.0;   // Hz
  int cycles = 1;           // clock cycles a search occupies
  double delay = 0.0;       // cycles / frequency, s
  double energy = 0.0;      // J per search, refresh amortized over the delay
  double edp = 0.0;         // energy * delay
  bool single_cycle = true; // search fits one clock period
};

// Clocked sensing: a search occupies ceil(T_phys * f) cycles; energy charges
// one line-switch plus per-cycle sensing and the refresh power integrated
// over the search delay. Slow clocks pay delay, fast clocks pay extra
// cycles, so EDP has an interior minimum near f = 1 / T_phys.
EdpPoint edp_at(const EnergyModel& m, const EncodingScheme& e,
                const Word& previous, const Word& next, int n_columns,
                int blocks_per_column, double frequency);

std::vector<EdpPoint> edp_sweep(const EnergyModel& m, const EncodingScheme& e,
                                const Word& previous, const Word& next,
                                int n_columns, int blocks_per_column,
                                const std::vector<double>& frequencies);

// Worst zero-temperature settling time over all stored/search symbol pairs,
// starting each transition from the relaxed state of the previous search
// level. Used to size EnergyModel::settle_time from the device physics.
double worst_settle_time(const DeviceConfig& c, const EncodingScheme& e,
                         const SimOptions& options);

}  // namespace smtjsim
