#include "smtjsim/table.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "smtjsim/parallel.hpp"

namespace smtjsim {

double ResistanceTable::lookup(double v2, double v3) const {
  if (n2 < 2 || n3 < 2) throw_validation("table lookup: table is empty");
  const double slack = 1e-12;
  double f2 = (v2 - v2_min) / v2_step;
  double f3 = (v3 - v3_min) / v3_step;
  if (f2 < -slack || f2 > n2 - 1 + slack || f3 < -slack ||
      f3 > n3 - 1 + slack)
    throw_validation("table lookup: voltage outside table range");
  int i2 = std::min(static_cast<int>(std::max(0.0, f2)), n2 - 2);
  int i3 = std::min(static_cast<int>(std::max(0.0, f3)), n3 - 2);
  double a = std::min(1.0, std::max(0.0, f2 - i2));
  double b = std::min(1.0, std::max(0.0, f3 - i3));
  return (1 - a) * (1 - b) * at(i2, i3) + a * (1 - b) * at(i2 + 1, i3) +
         (1 - a) * b * at(i2, i3 + 1) + a * b * at(i2 + 1, i3 + 1);
}

ResistanceTable build_resistance_table(const DeviceConfig& c, double v2_min,
                                       double v2_max, double v3_min,
                                       double v3_max, double step,
                                       const SimOptions& options,
                                       int n_threads) {
  if (!(step > 0.0 && step <= kMaxTableStep))
    throw_validation("build_resistance_table: step must be in (0, 25 mV]");
  if (!(v2_max > v2_min) || !(v3_max > v3_min))
    throw_validation("build_resistance_table: empty voltage range");

  ResistanceTable t;
  t.v2_min = v2_min;
  t.v3_min = v3_min;
  t.v2_step = step;
  t.v3_step = step;
  t.n2 = static_cast<int>(std::floor((v2_max - v2_min) / step + 1e-9)) + 1;
  t.n3 = static_cast<int>(std::floor((v3_max - v3_min) / step + 1e-9)) + 1;
  t.r_ohm.assign(static_cast<size_t>(t.n2) * t.n3, 0.0);

  SimOptions o = options;
  o.temperature = 0.0;
  o.record_trajectory = false;
  c.demag();  // fill the cache before worker threads share it
  unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                   : default_threads();
  parallel_for(t.r_ohm.size(), workers, [&](size_t idx) {
    int i2 = static_cast<int>(idx) % t.n2;
    int i3 = static_cast<int>(idx) / t.n2;
    double v2 = v2_min + i2 * step;
    double v3 = v3_min + i3 * step;
    SteadyAngle sa = steady_angle(c, v2, v3, o);
    t.r_ohm[idx] = resistance_from_angle(c.junction, sa.theta_deg);
  });
  return t;
}

void save_table(const ResistanceTable& t, const std::string& path) {
  nlohmann::json j;
  j["v2_min"] = t.v2_min;
  j["v2_step"] = t.v2_step;
  j["n2"] = t.n2;
  j["v3_min"] = t.v3_min;
  j["v3_step"] = t.v3_step;
  j["n3"] = t.n3;
  j["meta"] = t.meta;
  j["r_ohm"] = t.r_ohm;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_runtime("save_table: cannot open " + path);
  out << j.dump();
  out << "\n";
}

ResistanceTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_runtime("load_table: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw_runtime("load_table: parse failure in " + path + ": " + e.what());
  }
  ResistanceTable t;
  try {
    t.v2_min = j.at("v2_min").get<double>();
    t.v2_step = j.at("v2_step").get<double>();
    t.n2 = j.at("n2").get<int>();
    t.v3_min = j.at("v3_min").get<double>();
    t.v3_step = j.at("v3_step").get<double>();
    t.n3 = j.at("n3").get<int>();
    t.meta = j.value("meta", std::string());
    t.r_ohm = j.at("r_ohm").get<std::vector<double>>();
  } catch (const std::exception& e) {
    throw_runtime("load_table: bad field in " + path + ": " + e.what());
  }
  if (t.n2 < 2 || t.n3 < 2 ||
      t.r_ohm.size() != static_cast<size_t>(t.n2) * t.n3)
    throw_runtime("load_table: inconsistent dimensions in " + path);
  return t;
}

}  // namespace smtjsim
