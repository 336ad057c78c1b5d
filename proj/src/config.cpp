#include "smtjsim/config.hpp"

#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <string>

#include "json.hpp"
#include "smtjsim/io.hpp"

namespace smtjsim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw_validation("config: unknown field '" + path + item.key() + "'");
  }
}

template <typename T>
void get(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw_validation(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw_validation("config: top level must be an object");

  RunConfig c;
  check_keys(j, "",
             {"device", "sim", "encoding", "energy", "refresh", "table",
              "block_size", "threads", "output_dir"});

  if (j.contains("device")) {
    const json& d = j.at("device");
    check_keys(d, "device.",
               {"magnet", "piezo", "junction", "dipole_field_t",
                "fixed_axis_azimuth_deg", "stress_limit", "demag_resolution"});
    if (d.contains("magnet")) {
      const json& m = d.at("magnet");
      check_keys(m, "device.magnet.",
                 {"ms", "major_axis", "minor_axis", "thickness", "lambda_s",
                  "alpha", "gamma"});
      get(m, "ms", c.device.magnet.Ms);
      get(m, "major_axis", c.device.magnet.major_axis);
      get(m, "minor_axis", c.device.magnet.minor_axis);
      get(m, "thickness", c.device.magnet.thickness);
      get(m, "lambda_s", c.device.magnet.lambda_s);
      get(m, "alpha", c.device.magnet.alpha);
      get(m, "gamma", c.device.magnet.gamma);
    }
    if (d.contains("piezo")) {
      const json& p = d.at("piezo");
      check_keys(p, "device.piezo.",
                 {"gap", "field_per_stress", "capacitance", "electrode_edge",
                  "electrode_distance", "breakdown_voltage"});
      get(p, "gap", c.device.piezo.gap);
      get(p, "field_per_stress", c.device.piezo.field_per_stress);
      get(p, "capacitance", c.device.piezo.capacitance);
      get(p, "electrode_edge", c.device.piezo.electrode_edge);
      get(p, "electrode_distance", c.device.piezo.electrode_distance);
      get(p, "breakdown_voltage", c.device.piezo.breakdown_voltage);
    }
    if (d.contains("junction")) {
      const json& q = d.at("junction");
      check_keys(q, "device.junction.",
                 {"r_p", "r_ap", "chi", "read_voltage", "ra_product"});
      get(q, "r_p", c.device.junction.r_p);
      get(q, "r_ap", c.device.junction.r_ap);
      get(q, "chi", c.device.junction.chi);
      get(q, "read_voltage", c.device.junction.read_voltage);
      get(q, "ra_product", c.device.junction.ra_product);
    }
    get(d, "dipole_field_t", c.device.dipole_field_t);
    get(d, "fixed_axis_azimuth_deg", c.device.fixed_axis_azimuth_deg);
    get(d, "stress_limit", c.device.stress_limit);
    get(d, "demag_resolution", c.device.demag_resolution);
  }
  if (j.contains("sim")) {
    const json& s = j.at("sim");
    check_keys(s, "sim.",
               {"temperature", "dt", "max_time", "convergence_tol", "rng_seed",
                "record_trajectory"});
    get(s, "temperature", c.sim.temperature);
    get(s, "dt", c.sim.dt);
    get(s, "max_time", c.sim.max_time);
    get(s, "convergence_tol", c.sim.convergence_tol);
    get(s, "rng_seed", c.sim.rng_seed);
    get(s, "record_trajectory", c.sim.record_trajectory);
  }
  if (j.contains("encoding")) {
    const json& e = j.at("encoding");
    check_keys(e, "encoding.",
               {"search_x", "search_zero", "search_one", "target_one",
                "target_zero", "target_x", "v_feedback"});
    get(e, "search_x", c.encoding.search_x);
    get(e, "search_zero", c.encoding.search_zero);
    get(e, "search_one", c.encoding.search_one);
    get(e, "target_one", c.encoding.target_one);
    get(e, "target_zero", c.encoding.target_zero);
    get(e, "target_x", c.encoding.target_x);
    get(e, "v_feedback", c.encoding.v_feedback);
  }
  if (j.contains("energy")) {
    const json& e = j.at("energy");
    check_keys(e, "energy.",
               {"search_line_c", "senseamp_energy", "refresh_event_energy",
                "refresh_rate", "settle_time", "sense_delay"});
    get(e, "search_line_c", c.energy.search_line_c);
    get(e, "senseamp_energy", c.energy.senseamp_energy);
    get(e, "refresh_event_energy", c.energy.refresh_event_energy);
    get(e, "refresh_rate", c.energy.refresh_rate);
    get(e, "settle_time", c.energy.settle_time);
    get(e, "sense_delay", c.energy.sense_delay);
  }
  if (j.contains("refresh")) {
    const json& r = j.at("refresh");
    check_keys(r, "refresh.",
               {"r_low", "r_high", "i_c1", "i_c2", "t_sw1", "t_sw2"});
    get(r, "r_low", c.refresh.r_low);
    get(r, "r_high", c.refresh.r_high);
    get(r, "i_c1", c.refresh.i_c1);
    get(r, "i_c2", c.refresh.i_c2);
    get(r, "t_sw1", c.refresh.t_sw1);
    get(r, "t_sw2", c.refresh.t_sw2);
  }
  if (j.contains("table")) {
    const json& t = j.at("table");
    check_keys(t, "table.",
               {"v2_min", "v2_max", "v3_min", "v3_max", "step"});
    get(t, "v2_min", c.table.v2_min);
    get(t, "v2_max", c.table.v2_max);
    get(t, "v3_min", c.table.v3_min);
    get(t, "v3_max", c.table.v3_max);
    get(t, "step", c.table.step);
  }
  get(j, "block_size", c.block_size);
  get(j, "threads", c.threads);
  get(j, "output_dir", c.output_dir);
  return c;
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["device"]["magnet"] = {
      {"ms", c.device.magnet.Ms},
      {"major_axis", c.device.magnet.major_axis},
      {"minor_axis", c.device.magnet.minor_axis},
      {"thickness", c.device.magnet.thickness},
      {"lambda_s", c.device.magnet.lambda_s},
      {"alpha", c.device.magnet.alpha},
      {"gamma", c.device.magnet.gamma},
  };
  j["device"]["piezo"] = {
      {"gap", c.device.piezo.gap},
      {"field_per_stress", c.device.piezo.field_per_stress},
      {"capacitance", c.device.piezo.capacitance},
      {"electrode_edge", c.device.piezo.electrode_edge},
      {"electrode_distance", c.device.piezo.electrode_distance},
      {"breakdown_voltage", c.device.piezo.breakdown_voltage},
  };
  j["device"]["junction"] = {
      {"r_p", c.device.junction.r_p},
      {"r_ap", c.device.junction.r_ap},
      {"chi", c.device.junction.chi},
      {"read_voltage", c.device.junction.read_voltage},
      {"ra_product", c.device.junction.ra_product},
  };
  j["device"]["dipole_field_t"] = c.device.dipole_field_t;
  j["device"]["fixed_axis_azimuth_deg"] = c.device.fixed_axis_azimuth_deg;
  j["device"]["stress_limit"] = c.device.stress_limit;
  j["device"]["demag_resolution"] = c.device.demag_resolution;
  j["sim"] = {
      {"temperature", c.sim.temperature},
      {"dt", c.sim.dt},
      {"max_time", c.sim.max_time},
      {"convergence_tol", c.sim.convergence_tol},
      {"rng_seed", c.sim.rng_seed},
      {"record_trajectory", c.sim.record_trajectory},
  };
  j["encoding"] = {
      {"search_x", c.encoding.search_x},
      {"search_zero", c.encoding.search_zero},
      {"search_one", c.encoding.search_one},
      {"target_one", c.encoding.target_one},
      {"target_zero", c.encoding.target_zero},
      {"target_x", c.encoding.target_x},
      {"v_feedback", c.encoding.v_feedback},
  };
  j["energy"] = {
      {"search_line_c", c.energy.search_line_c},
      {"senseamp_energy", c.energy.senseamp_energy},
      {"refresh_event_energy", c.energy.refresh_event_energy},
      {"refresh_rate", c.energy.refresh_rate},
      {"settle_time", c.energy.settle_time},
      {"sense_delay", c.energy.sense_delay},
  };
  j["refresh"] = {
      {"r_low", c.refresh.r_low},   {"r_high", c.refresh.r_high},
      {"i_c1", c.refresh.i_c1},     {"i_c2", c.refresh.i_c2},
      {"t_sw1", c.refresh.t_sw1},   {"t_sw2", c.refresh.t_sw2},
  };
  j["table"] = {
      {"v2_min", c.table.v2_min}, {"v2_max", c.table.v2_max},
      {"v3_min", c.table.v3_min}, {"v3_max", c.table.v3_max},
      {"step", c.table.step},
  };
  j["block_size"] = c.block_size;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

RunConfig load_config(const std::string& path) {
  return config_from_json(read_text_file(path));
}

void save_config(const RunConfig& c, const std::string& path) {
  write_text_file(path, config_to_json(c));
}

std::vector<std::string> validate_all(const RunConfig& c) {
  std::vector<std::string> diag;
  validate(c.device, diag, "device");
  validate(c.sim, &diag, "sim: ");
  validate(c.encoding, diag, "encoding");
  validate(c.energy, diag, "energy");
  validate(c.refresh, diag, "refresh");
  if (!(c.table.step > 0 && c.table.step <= kMaxTableStep))
    diag.push_back("table: step must be in (0, 25 mV]");
  if (!(c.table.v2_max > c.table.v2_min))
    diag.push_back("table: v2_max must exceed v2_min");
  if (!(c.table.v3_max > c.table.v3_min))
    diag.push_back("table: v3_max must exceed v3_min");
  if (c.block_size < 1) diag.push_back("block_size must be >= 1");
  if (c.threads < 0) diag.push_back("threads must be >= 0");
  return diag;
}

std::string config_digest(const RunConfig& c) {
  // FNV-1a over the canonical JSON form.
  std::string text = config_to_json(c);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace smtjsim
