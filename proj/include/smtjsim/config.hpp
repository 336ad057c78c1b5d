#pragma once

#include <string>
#include <vector>

#include "smtjsim/analysis.hpp"
#include "smtjsim/array.hpp"
#include "smtjsim/cell.hpp"
#include "smtjsim/device.hpp"
#include "smtjsim/table.hpp"

namespace smtjsim {

struct TableSpec {
  double v2_min = -0.1, v2_max = 0.7;
  double v3_min = -0.1, v3_max = 0.7;
  double step = 0.00625;
};

// One run configuration. JSON round-trips field for field; missing fields
// keep their defaults, unknown fields are a validation diagnostic.
struct RunConfig {
  DeviceConfig device;
  SimOptions sim;
  EncodingScheme encoding;
  EnergyModel energy;
  RefreshMtjParams refresh;
  TableSpec table;
  int block_size = 16;
  int threads = 0;            // 0 = hardware default
  std::string output_dir;     // empty = fall through to env / cwd
};

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& c);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& c, const std::string& path);

// Collects every diagnostic (field path + message) instead of stopping at
// the first; empty result means the configuration is valid.
std::vector<std::string> validate_all(const RunConfig& c);

// Stable hex digest of the canonical JSON form, for provenance lines.
std::string config_digest(const RunConfig& c);

}  // namespace smtjsim
