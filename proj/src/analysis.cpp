#include "smtjsim/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "smtjsim/parallel.hpp"
#include "smtjsim/rng.hpp"

namespace smtjsim {

MonteCarloResult monte_carlo_rotation(const DeviceConfig& c, double v2,
                                      double v3, const SimOptions& options,
                                      int n_trials, int n_threads) {
  if (n_trials < 1)
    throw_validation("monte_carlo_rotation: n_trials must be >= 1");
  unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                   : default_threads();
  StressState stress = stress_from_voltages(c, v2, v3);
  c.demag();  // fill the cache before worker threads share it
  const Vec3 dip = c.dipole_vector();
  const Vec3 axis = c.fixed_axis();

  MonteCarloResult res;
  res.n_trials = n_trials;
  res.final_theta_deg.assign(n_trials, 0.0);
  std::vector<double> rotation(n_trials, 0.0);
  std::vector<int> sense_code(n_trials, 0);  // -1 anti, 0 none, +1 clockwise

  parallel_for(static_cast<size_t>(n_trials), workers, [&](size_t k) {
    SimOptions o = options;
    // Per-trial stream index: identical results for any thread count.
    o.rng_seed = splitmix64(options.rng_seed +
                            (static_cast<std::uint64_t>(k) + 1) *
                                0x9E3779B97F4A7C15ULL);
    SteadyStateResult r =
        relax(c.magnet, c.demag(), stress, dip, axis, MagState{}, o);
    res.final_theta_deg[k] = r.final_state.theta;
    rotation[k] = r.net_rotation_deg;
    sense_code[k] =
        r.chirality == "none" ? 0 : (r.chirality == "clockwise" ? 1 : -1);
  });

  // Sequential reduction over trial slots keeps totals bit-stable.
  double sum_theta = 0.0, sum_rot = 0.0;
  for (int k = 0; k < n_trials; ++k) {
    sum_theta += res.final_theta_deg[k];
    sum_rot += rotation[k];
    if (sense_code[k] > 0)
      ++res.clockwise;
    else if (sense_code[k] < 0)
      ++res.anticlockwise;
    else
      ++res.none;
  }
  res.mean_theta_deg = sum_theta / n_trials;
  res.mean_rotation_deg = sum_rot / n_trials;
  if (n_trials > 1) {
    double ss = 0.0;
    for (int k = 0; k < n_trials; ++k) {
      double d = res.final_theta_deg[k] - res.mean_theta_deg;
      ss += d * d;
    }
    res.theta_std_deg = std::sqrt(ss / (n_trials - 1));
  }
  return res;
}

double switching_energy(double capacitance, double delta_v) {
  if (!(capacitance > 0))
    throw_validation("switching_energy: capacitance must be > 0");
  return capacitance * delta_v * delta_v;
}

void validate(const EnergyModel& m, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& s) { out.push_back(prefix + ": " + s); };
  if (!(m.search_line_c > 0)) bad("search_line_c must be > 0");
  if (!(m.senseamp_energy >= 0)) bad("senseamp_energy must be >= 0");
  if (!(m.refresh_event_energy >= 0)) bad("refresh_event_energy must be >= 0");
  if (!(m.refresh_rate >= 0)) bad("refresh_rate must be >= 0");
  if (!(m.settle_time > 0)) bad("settle_time must be > 0");
  if (!(m.sense_delay >= 0)) bad("sense_delay must be >= 0");
}

double physical_search_time(const EnergyModel& m) {
  return m.settle_time + m.sense_delay;
}

namespace {

double line_switch_energy(const EnergyModel& m, const EncodingScheme& e,
                          const Word& previous, const Word& next,
                          int n_columns) {
  if (previous.size() != next.size())
    throw_validation("search_energy: word lengths differ");
  if (n_columns < 1) throw_validation("search_energy: n_columns must be >= 1");
  double total = 0.0;
  for (size_t i = 0; i < next.size(); ++i) {
    double dv =
        e.search_voltage(next[i]) - e.search_voltage(previous[i]);
    if (dv != 0.0)
      total += switching_energy(m.search_line_c * n_columns, dv);
  }
  return total;
}

}  // namespace

double search_energy(const EnergyModel& m, const EncodingScheme& e,
                     const Word& previous, const Word& next, int n_columns,
                     int blocks_per_column) {
  if (blocks_per_column < 1)
    throw_validation("search_energy: blocks_per_column must be >= 1");
  return line_switch_energy(m, e, previous, next, n_columns) +
         m.senseamp_energy * n_columns * blocks_per_column;
}

EdpPoint edp_at(const EnergyModel& m, const EncodingScheme& e,
                const Word& previous, const Word& next, int n_columns,
                int blocks_per_column, double frequency) {
  if (!(frequency > 0)) throw_validation("edp_at: frequency must be > 0");
  if (blocks_per_column < 1)
    throw_validation("edp_at: blocks_per_column must be >= 1");
  EdpPoint p;
  p.frequency = frequency;
  double t_phys = physical_search_time(m);
  p.cycles = std::max(
      1, static_cast<int>(std::ceil(t_phys * frequency - 1e-12)));
  p.delay = p.cycles / frequency;
  p.single_cycle = p.cycles == 1;
  // Lines switch once per search; the sense path burns power every cycle the
  // search occupies; background refresh is amortized over the search delay.
  p.energy = line_switch_energy(m, e, previous, next, n_columns) +
             m.senseamp_energy * n_columns * blocks_per_column * p.cycles +
             m.refresh_rate * p.delay * m.refresh_event_energy;
  p.edp = p.energy * p.delay;
  return p;
}

std::vector<EdpPoint> edp_sweep(const EnergyModel& m, const EncodingScheme& e,
                                const Word& previous, const Word& next,
                                int n_columns, int blocks_per_column,
                                const std::vector<double>& frequencies) {
  if (frequencies.empty())
    throw_validation("edp_sweep: frequency list is empty");
  std::vector<EdpPoint> out;
  out.reserve(frequencies.size());
  for (double f : frequencies)
    out.push_back(edp_at(m, e, previous, next, n_columns, blocks_per_column, f));
  return out;
}

double worst_settle_time(const DeviceConfig& c, const EncodingScheme& e,
                         const SimOptions& options) {
  SimOptions o = options;
  o.temperature = 0.0;  // settling is a deterministic figure
  static const Trit kAll[3] = {Trit::kZero, Trit::kOne, Trit::kX};
  double worst = 0.0;
  for (Trit stored : kAll) {
    double v3 = e.stored_gate_voltage(stored);
    for (Trit from : kAll) {
      // Equilibrium under the previous search level...
      StressState s0 = stress_from_voltages(c, e.search_voltage(from), v3);
      SteadyStateResult r0 = relax(c.magnet, c.demag(), s0, c.dipole_vector(),
                                   c.fixed_axis(), MagState{}, o);
      for (Trit to : kAll) {
        if (to == from) continue;
        // ...is the launch state for the next one.
        StressState s1 = stress_from_voltages(c, e.search_voltage(to), v3);
        SteadyStateResult r1 =
            relax(c.magnet, c.demag(), s1, c.dipole_vector(), c.fixed_axis(),
                  r0.final_state, o);
        worst = std::max(worst, r1.settle_time);
      }
    }
  }
  return worst;
}

}  // namespace smtjsim
