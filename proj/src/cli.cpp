#include "smtjsim/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smtjsim/analysis.hpp"
#include "smtjsim/array.hpp"
#include "smtjsim/config.hpp"
#include "smtjsim/io.hpp"
#include "smtjsim/table.hpp"

namespace smtjsim {
namespace {

struct GlobalOpts {
  std::string config_path;
  std::string output_dir;
  std::string table_cache;
  int threads = -1;          // -1 = keep config value
  long long seed = -1;       // -1 = keep config value
};

RunConfig load_effective_config(const GlobalOpts& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  if (g.threads >= 0) cfg.threads = g.threads;
  if (g.seed >= 0) cfg.sim.rng_seed = static_cast<std::uint64_t>(g.seed);
  return cfg;
}

std::string join_out(const std::string& dir, const std::string& name) {
  if (name.empty()) return name;
  if (name.front() == '/' || name.find('/') != std::string::npos) return name;
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

// Digest over the physics configuration only. Execution-environment knobs
// (thread count, output directory) never change results, so they are
// excluded to keep reports byte-identical across machines.
std::string provenance_digest(const RunConfig& cfg) {
  RunConfig reduced = cfg;
  reduced.threads = 0;
  reduced.output_dir.clear();
  return config_digest(reduced);
}

// Digest over the fields the resistance table actually depends on. The
// relaxation runs at zero temperature, so the stochastic knobs are zeroed.
std::string table_digest(const RunConfig& cfg) {
  RunConfig reduced;
  reduced.device = cfg.device;
  reduced.table = cfg.table;
  reduced.sim = cfg.sim;
  reduced.sim.temperature = 0.0;
  reduced.sim.record_trajectory = false;
  reduced.sim.rng_seed = 0;
  return config_digest(reduced);
}

ResistanceTable ensure_table(const RunConfig& cfg, const std::string& cache) {
  std::string digest = table_digest(cfg);
  if (!cache.empty()) {
    std::ifstream probe(cache);
    if (probe) {
      try {
        ResistanceTable t = load_table(cache);
        if (t.meta == digest) return t;
      } catch (const Error&) {
        // fall through to rebuild
      }
    }
  }
  ResistanceTable t = build_resistance_table(
      cfg.device, cfg.table.v2_min, cfg.table.v2_max, cfg.table.v3_min,
      cfg.table.v3_max, cfg.table.step, cfg.sim, cfg.threads);
  t.meta = digest;
  if (!cache.empty()) save_table(t, cache);
  return t;
}

int check_config(const RunConfig& cfg) {
  std::vector<std::string> diag = validate_all(cfg);
  if (diag.empty()) return kExitOk;
  for (const auto& d : diag) std::cerr << "config error: " << d << "\n";
  return kExitValidation;
}

int cmd_transfer(const RunConfig& cfg, const std::string& out_dir, double v3,
                 double v2_min, double v2_max, int points, int repeats,
                 double temperature, const std::string& out_name) {
  SimOptions sim = cfg.sim;
  if (temperature >= 0) sim.temperature = temperature;
  TransferCurve curve = transfer_curve(cfg.device, v2_min, v2_max, points, v3,
                                       sim, repeats, cfg.threads);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"V2", "V3", "theta_deg", "R_ohm", "I1_A", "T_K"});
  for (const auto& p : curve.points) {
    csv.field(p.v2);
    csv.field(p.v3);
    csv.field(p.theta_deg);
    csv.field(p.r_ohm);
    csv.field(p.i1_a);
    csv.field(p.t_k);
    csv.end_row();
  }
  std::string path = join_out(out_dir, out_name);
  write_text_file(path, os.str());
  std::cout << "transfer: wrote " << curve.points.size() << " points to "
            << path << "\n";
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, const std::string& out_dir,
               const std::string& table_cache, const std::string& stored_file,
               const std::string& array_json, const std::string& search_str,
               const std::string& search_file, int block_size,
               const std::string& out_name) {
  TcamArray array;
  if (!array_json.empty()) {
    array = array_from_json(read_text_file(array_json));
  } else if (!stored_file.empty()) {
    array.stored = parse_word_file(stored_file);
    array.block_size = block_size > 0 ? block_size : cfg.block_size;
  } else {
    throw_validation("search: need --stored-file or --array-json");
  }
  if (block_size > 0) array.block_size = block_size;

  Word search_word;
  if (!search_str.empty()) {
    search_word = word_from_string(search_str);
  } else if (!search_file.empty()) {
    auto words = parse_word_file(search_file);
    if (words.size() != 1)
      throw_validation("search: --search-file must contain exactly one word");
    search_word = words.front();
  } else {
    throw_validation("search: need --search or --search-file");
  }

  ResistanceTable table = ensure_table(cfg, table_cache);
  SearchResult res = search(array, table, cfg.encoding, search_word);

  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"column_id", "block_id", "R_col", "R_ref", "verdict"});
  for (const auto& b : res.blocks) {
    csv.field(b.column);
    csv.field(b.block);
    csv.field(b.r_col);
    csv.field(b.r_ref);
    csv.field(std::string(b.match ? "match" : "mismatch"));
    csv.end_row();
  }
  std::string path = join_out(out_dir, out_name);
  write_text_file(path, os.str());

  int n_match = 0;
  for (size_t i = 0; i < res.column_match.size(); ++i) {
    std::cout << "column " << i << ": "
              << (res.column_match[i] ? "match" : "mismatch") << "\n";
    if (res.column_match[i]) ++n_match;
  }
  std::cout << "matches: " << n_match << "/" << res.column_match.size()
            << " (transcript in " << path << ")\n";
  return kExitOk;
}

int cmd_montecarlo(const RunConfig& cfg, const std::string& out_dir, double v2,
                   double v3, int trials, double temperature, double max_time,
                   bool assert_chirality, const std::string& out_name) {
  SimOptions sim = cfg.sim;
  if (temperature >= 0) sim.temperature = temperature;
  if (max_time > 0) sim.max_time = max_time;
  MonteCarloResult mc =
      monte_carlo_rotation(cfg.device, v2, v3, sim, trials, cfg.threads);

  nlohmann::ordered_json j;
  j["v2"] = v2;
  j["v3"] = v3;
  j["temperature"] = sim.temperature;
  j["rng_seed"] = sim.rng_seed;
  j["n_trials"] = mc.n_trials;
  j["clockwise"] = mc.clockwise;
  j["anticlockwise"] = mc.anticlockwise;
  j["none"] = mc.none;
  j["mean_theta_deg"] = mc.mean_theta_deg;
  j["theta_std_deg"] = mc.theta_std_deg;
  j["mean_rotation_deg"] = mc.mean_rotation_deg;
  j["final_theta_deg"] = mc.final_theta_deg;
  j["config_digest"] = provenance_digest(cfg);
  std::string path = join_out(out_dir, out_name);
  write_text_file(path, j.dump(2) + "\n");

  std::cout << "montecarlo: " << mc.clockwise << " clockwise, "
            << mc.anticlockwise << " anticlockwise, " << mc.none
            << " below threshold (report in " << path << ")\n";
  if (assert_chirality && mc.anticlockwise != 0) {
    std::cerr << "assertion failed: " << mc.anticlockwise
              << " anticlockwise rotations observed\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_scaling(const RunConfig& cfg, const std::string& out_dir,
                const std::string& table_cache, int n_max,
                const std::string& out_name) {
  if (n_max < 1) throw_validation("scaling: n-max must be >= 1");
  ResistanceTable table = ensure_table(cfg, table_cache);
  PairResistances pr = pair_resistances(table, cfg.encoding);

  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"n", "R_match_ohm", "R_one_mismatch_ohm", "delta_R_ohm"});
  for (int n = 1; n <= n_max; ++n) {
    csv.field(n);
    csv.field(scaled_match_resistance(pr.r_match_worst, n));
    csv.field(one_mismatch_resistance(pr.r_match_best, pr.r_mismatch, n));
    csv.field(delta_r(pr.r_match_worst, pr.r_match_best, pr.r_mismatch, n));
    csv.end_row();
  }
  std::string path = join_out(out_dir, out_name);
  write_text_file(path, os.str());

  int crossover =
      max_column_length(pr.r_match_worst, pr.r_match_best, pr.r_mismatch,
                        n_max);
  std::cout << "pair resistances: worst match " << format_double(pr.r_match_worst)
            << ", best match " << format_double(pr.r_match_best)
            << ", mismatch " << format_double(pr.r_mismatch) << "\n";
  std::cout << "crossover: largest n with positive margin = " << crossover
            << " (rows in " << path << ")\n";
  return kExitOk;
}

int cmd_edp(const RunConfig& cfg, const std::string& out_dir, double f_min,
            double f_max, int points, int columns, int word_bits,
            bool measure_settle, const std::string& out_name) {
  if (!(f_min > 0 && f_max > f_min))
    throw_validation("edp: need 0 < f-min < f-max");
  if (points < 2) throw_validation("edp: points must be >= 2");
  if (word_bits < 1) throw_validation("edp: word-bits must be >= 1");

  EnergyModel model = cfg.energy;
  if (measure_settle)
    model.settle_time = worst_settle_time(cfg.device, cfg.encoding, cfg.sim);

  Word prev(word_bits, Trit::kX), next(word_bits, Trit::kOne);
  int blocks = (word_bits + cfg.block_size - 1) / cfg.block_size;

  std::vector<double> freqs(points);
  for (int i = 0; i < points; ++i)
    freqs[i] = f_min * std::pow(f_max / f_min,
                                static_cast<double>(i) / (points - 1));
  std::vector<EdpPoint> sweep =
      edp_sweep(model, cfg.encoding, prev, next, columns, blocks, freqs);

  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"frequency_hz", "cycles", "delay_s", "energy_j", "edp_js",
              "single_cycle"});
  const EdpPoint* best = &sweep.front();
  for (const auto& p : sweep) {
    csv.field(p.frequency);
    csv.field(p.cycles);
    csv.field(p.delay);
    csv.field(p.energy);
    csv.field(p.edp);
    csv.field(static_cast<long long>(p.single_cycle ? 1 : 0));
    csv.end_row();
    if (p.edp < best->edp) best = &p;
  }
  std::string path = join_out(out_dir, out_name);
  write_text_file(path, os.str());
  std::cout << "edp: minimum " << format_double(best->edp) << " J*s at "
            << format_double(best->frequency) << " Hz (settle "
            << format_double(model.settle_time) << " s, rows in " << path
            << ")\n";
  return kExitOk;
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"straintronic ternary CAM simulator"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--output-dir", g.output_dir,
                 "output directory (default: config, then SMTJSIM_OUTPUT_DIR, "
                 "then cwd)");
  app.add_option("--threads", g.threads, "worker thread count (0 = auto)");
  app.add_option("--seed", g.seed, "RNG seed override");
  app.add_option("--table-cache", g.table_cache,
                 "resistance table cache file (load if valid, else build and "
                 "save)");

  // transfer
  auto* t = app.add_subcommand("transfer", "sweep V2 and report R, theta, I1");
  double t_v3 = 0.0, t_v2min = -0.1, t_v2max = 0.7, t_temp = -1.0;
  int t_points = 161, t_repeats = 16;
  std::string t_out = "transfer.csv";
  t->add_option("--v3", t_v3, "stored-side gate voltage");
  t->add_option("--v2-min", t_v2min, "sweep start");
  t->add_option("--v2-max", t_v2max, "sweep end");
  t->add_option("--points", t_points, "sweep points (>= 16)");
  t->add_option("--repeats", t_repeats, "thermal repeats per point");
  t->add_option("--temperature", t_temp, "override sim temperature (K)");
  t->add_option("--out", t_out, "output CSV name");

  // search
  auto* s = app.add_subcommand("search", "run one search word against stored "
                                         "columns");
  std::string s_stored, s_array, s_search, s_search_file, s_out = "search.csv";
  int s_block = 0;
  s->add_option("--stored-file", s_stored, "stored words, one per line");
  s->add_option("--array-json", s_array, "array JSON (stored + block_size)");
  s->add_option("--search", s_search, "search word, e.g. 10XX01");
  s->add_option("--search-file", s_search_file, "file with one search word");
  s->add_option("--block-size", s_block, "cells per sensing block");
  s->add_option("--out", s_out, "transcript CSV name");

  // montecarlo
  auto* m = app.add_subcommand("montecarlo",
                               "repeated thermal relaxations at one bias");
  double m_v2 = 0.0, m_v3 = 0.0, m_temp = -1.0, m_maxtime = 0.0;
  int m_trials = 1000;
  bool m_assert = false;
  std::string m_out = "montecarlo.json";
  m->add_option("--v2", m_v2, "search-side gate voltage")->required();
  m->add_option("--v3", m_v3, "stored-side gate voltage");
  m->add_option("--trials", m_trials, "number of trajectories");
  m->add_option("--temperature", m_temp, "override sim temperature (K)");
  m->add_option("--max-time", m_maxtime, "override sim max_time (s)");
  m->add_flag("--assert-chirality", m_assert,
              "exit 3 if any trajectory rotates anticlockwise");
  m->add_option("--out", m_out, "output JSON name");

  // scaling
  auto* sc = app.add_subcommand("scaling",
                                "column sensing margin vs column length");
  int sc_nmax = 64;
  std::string sc_out = "scaling.csv";
  sc->add_option("--n-max", sc_nmax, "largest column length");
  sc->add_option("--out", sc_out, "output CSV name");

  // edp
  auto* e = app.add_subcommand("edp", "energy-delay product vs clock "
                                      "frequency");
  double e_fmin = 1e7, e_fmax = 1e9;
  int e_points = 41, e_columns = 64, e_bits = 144;
  bool e_measure = false;
  std::string e_out = "edp.csv";
  e->add_option("--f-min", e_fmin, "lowest clock frequency (Hz)");
  e->add_option("--f-max", e_fmax, "highest clock frequency (Hz)");
  e->add_option("--points", e_points, "sweep points");
  e->add_option("--columns", e_columns, "array columns");
  e->add_option("--word-bits", e_bits, "word length in cells");
  e->add_flag("--measure-settle", e_measure,
              "derive settle time from device physics instead of the config");
  e->add_option("--out", e_out, "output CSV name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& pe) {
    std::cerr << "usage error: " << pe.what() << "\n";
    return kExitValidation;
  }

  try {
    RunConfig cfg = load_effective_config(g);
    int bad = check_config(cfg);
    if (bad != kExitOk) return bad;
    std::string out_dir = resolve_output_dir(g.output_dir, cfg.output_dir);

    if (t->parsed())
      return cmd_transfer(cfg, out_dir, t_v3, t_v2min, t_v2max, t_points,
                          t_repeats, t_temp, t_out);
    if (s->parsed())
      return cmd_search(cfg, out_dir, g.table_cache, s_stored, s_array,
                        s_search, s_search_file, s_block, s_out);
    if (m->parsed())
      return cmd_montecarlo(cfg, out_dir, m_v2, m_v3, m_trials, m_temp,
                            m_maxtime, m_assert, m_out);
    if (sc->parsed()) return cmd_scaling(cfg, out_dir, g.table_cache, sc_nmax,
                                         sc_out);
    if (e->parsed())
      return cmd_edp(cfg, out_dir, e_fmin, e_fmax, e_points, e_columns, e_bits,
                     e_measure, e_out);
    std::cerr << "usage error: no subcommand\n";
    return kExitValidation;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.kind() == ErrorKind::kValidation ? kExitValidation
                                                : kExitRuntime;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace smtjsim
