// SPDX-License-Identifier: Apache-2.0
//
// beamcb: data-driven analog beam codebook synthesis for antenna arrays
// Copyright (C) 2026 The beamcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "beamcb/format.hpp"
#include "config.hpp"
#include "design.hpp"
#include "selfcheck.hpp"

namespace beamcb::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Overrides {
  std::string config;
  std::string output_dir;
  std::optional<std::string> algorithm;
  std::optional<std::size_t> k;
  std::optional<std::string> phase_bits;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> init;
  std::optional<int> n_rand;
  std::optional<std::string> directions;
  std::optional<std::size_t> elements;
  std::optional<double> spacing;
  std::optional<double> pattern_q;
  std::optional<std::size_t> sampling_factor;
};

void add_array_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--elements", o.elements, "Synthetic ULA: number of elements");
  cmd->add_option("--spacing-lambda", o.spacing, "Synthetic ULA: element spacing in wavelengths");
  cmd->add_option("--pattern-q", o.pattern_q, "Synthetic ULA: element pattern exponent q in sin^q");
  cmd->add_option("--sampling-factor", o.sampling_factor, "Synthetic ULA: a in 2a+1 sample directions");
}

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "JSON run configuration");
  cmd->add_option("-o,--output-dir", o.output_dir, "Output directory");
  cmd->add_option("--algorithm", o.algorithm, "greedy | kmeans | benchmark | 3c");
  cmd->add_option("-K,--K", o.k, "Codebook size");
  cmd->add_option("-b,--phase-bits", o.phase_bits, "Phase-shifter bits, or 'continuous'");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--init", o.init, "K-Means init: benchmark | 3c | uniform | greedy");
  cmd->add_option("--n-rand", o.n_rand, "Gaussian randomization draws");
  cmd->add_option("--directions", o.directions, "'native' or a Fibonacci direction count");
  add_array_flags(cmd, o);
}

SyntheticUlaSpec synthetic_from_flags(const Overrides& o, SyntheticUlaSpec base) {
  if (o.elements) {
    base.num_elements = *o.elements;
  }
  if (o.spacing) {
    base.spacing_over_lambda = *o.spacing;
  }
  if (o.pattern_q) {
    base.pattern_q = *o.pattern_q;
  }
  if (o.sampling_factor) {
    base.sampling_factor = *o.sampling_factor;
  }
  base.validate();
  return base;
}

bool has_array_flags(const Overrides& o) { return o.elements || o.spacing || o.pattern_q || o.sampling_factor; }

RunConfig build_config(const Overrides& o) {
  RunConfig cfg;
  if (!o.config.empty()) {
    cfg = load_run_config(o.config);
  }
  if (has_array_flags(o)) {
    SyntheticUlaSpec base;
    if (cfg.arrays.size() == 1 && cfg.arrays[0].synthetic && !cfg.arrays[0].axis) {
      base = *cfg.arrays[0].synthetic;
    }
    ArraySource src;
    src.id = cfg.arrays.size() == 1 ? cfg.arrays[0].id : "ula";
    src.synthetic = synthetic_from_flags(o, base);
    cfg.arrays = {src};
  }
  auto& al = cfg.algorithm;
  if (o.algorithm) {
    nlohmann::json j = {{"name", *o.algorithm}};
    al.name = parse_run_config({{"algorithm", j}}, {}).algorithm.name;
  }
  if (o.k) {
    if (*o.k < 1) {
      throw ConfigError("--K must be >= 1");
    }
    al.k = *o.k;
    if (al.stop && std::holds_alternative<SizeLimit>(*al.stop)) {
      al.stop = SizeLimit{al.k};
    }
  }
  if (o.phase_bits) {
    if (*o.phase_bits == "continuous") {
      al.phase_bits.reset();
    } else {
      int b = 0;
      try {
        b = std::stoi(*o.phase_bits);
      } catch (const std::exception&) {
        throw ConfigError("--phase-bits: expected 1..16 or 'continuous'");
      }
      if (b < 1 || b > PhaseSpec::kMaxBits) {
        throw ConfigError("--phase-bits: expected 1..16 or 'continuous'");
      }
      al.phase_bits = b;
    }
  }
  if (o.seed) {
    al.seed = *o.seed;
  }
  if (o.init) {
    al.init = *o.init;
  }
  if (o.n_rand) {
    if (*o.n_rand < 1) {
      throw ConfigError("--n-rand must be >= 1");
    }
    al.n_rand = *o.n_rand;
  }
  if (o.directions) {
    al.directions = parse_direction_choice(*o.directions);
    cfg.evaluation.directions = al.directions;
  }
  if (!o.output_dir.empty()) {
    cfg.output_dir = o.output_dir;
  }
  return cfg;
}

fs::path output_dir(const std::optional<fs::path>& configured) {
  fs::path dir = ".";
  if (configured) {
    dir = *configured;
  } else if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  }
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error("cannot write " + path.string());
  }
  f << text;
  if (!f) {
    throw Error("write failed: " + path.string());
  }
}

std::string pattern_csv(const GainPattern& p) {
  std::ostringstream os;
  write_pattern_csv(os, p);
  return os.str();
}

ordered_json stats_json(const CoverageStats& s) { return ordered_json::parse(stats_to_json(s)); }

// ---------------------------------------------------------------------------

int cmd_gen_efield(const Overrides& o, const std::string& id, const std::string& output, std::ostream& out) {
  SyntheticUlaSpec base;
  std::string array_id = id;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) {
      throw ConfigError("cannot open config " + o.config);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(o.config + ": " + e.what());
    }
    if (j.contains("synthetic")) {
      base = parse_synthetic(j.at("synthetic"));
    } else {
      const RunConfig cfg = parse_run_config(j, fs::path(o.config).parent_path());
      if (cfg.arrays.empty() || !cfg.arrays[0].synthetic) {
        throw ConfigError("config has no synthetic array block");
      }
      base = *cfg.arrays[0].synthetic;
      if (array_id.empty()) {
        array_id = cfg.arrays[0].id;
      }
    }
  }
  if (array_id.empty()) {
    array_id = "ula";
  }
  const SyntheticUlaSpec spec = synthetic_from_flags(o, base);
  const SyntheticUla ula = generate_ula_efield(spec, array_id);

  fs::path csv = output;
  if (csv.empty()) {
    csv = output_dir(o.output_dir.empty() ? std::nullopt : std::optional<fs::path>(o.output_dir)) / (array_id + ".csv");
  } else if (csv.has_parent_path()) {
    fs::create_directories(csv.parent_path());
  }
  std::ostringstream body;
  write_efield_csv(body, ula.grid);
  write_file(csv, body.str());

  ordered_json side;
  side["array_id"] = array_id;
  side["file"] = csv.filename().generic_string();
  side["synthetic"] = synthetic_to_json(spec);
  side["num_directions"] = ula.directions.size();
  fs::path sidecar = csv;
  sidecar.replace_extension(".json");
  write_file(sidecar, side.dump(2) + "\n");
  out << "wrote " << csv.generic_string() << " (" << ula.directions.size() << " directions)\n";
  return kExitOk;
}

int cmd_design(const Overrides& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = build_config(o);
  const LoadedArrays arrays = load_arrays(cfg);
  const DesignOutcome d = run_design(cfg, arrays);
  const fs::path dir = output_dir(cfg.output_dir);

  write_file(dir / "codebook.json", codebook_to_json(d.codebook));

  ordered_json log;
  log["algorithm"] = to_string(cfg.algorithm.name);
  log["seed"] = cfg.algorithm.seed;
  log["status"] = d.status;
  log["warnings"] = d.warnings;
  log["codebook_size"] = d.codebook.size();
  log["trace"] = d.trace;
  log["config"] = run_config_to_json(cfg);
  write_file(dir / "design_log.json", log.dump(2) + "\n");

  const DirectionSet dirs = resolve_directions(cfg.evaluation.directions, arrays);
  const CoherenceCache cache(arrays.grids, dirs);
  write_file(dir / "summary.txt", summary_text(summarize_codebook(cache, d.codebook)));

  for (const auto& w : d.warnings) {
    err << "warning: " << w << "\n";
  }
  out << "designed " << d.codebook.size() << " beams (" << to_string(cfg.algorithm.name) << ", status " << d.status
      << ") in " << dir.generic_string() << "\n";
  return kExitOk;
}

int cmd_eval(const Overrides& o, const std::string& codebook_path, bool bound_only, std::ostream& out) {
  const RunConfig cfg = build_config(o);
  const LoadedArrays arrays = load_arrays(cfg);
  if (!bound_only && codebook_path.empty()) {
    throw ConfigError("eval needs --codebook or --bound-only");
  }
  std::optional<Codebook> cb;
  if (!bound_only) {
    if (!fs::exists(codebook_path)) {
      throw ConfigError("codebook not found: " + codebook_path);
    }
    cb = load_codebook(codebook_path);
    check_codebook(*cb, arrays.grids);
  }
  const fs::path dir = output_dir(cfg.output_dir);
  const DirectionSet dirs =
      restrict_region(resolve_directions(cfg.evaluation.directions, arrays), cfg.evaluation.region);
  const GainPattern bound = upper_bound_pattern(arrays.grids, dirs);

  ordered_json stats;
  stats["num_directions"] = dirs.size();
  stats["bound"] = stats_json(coverage_stats(bound, cfg.evaluation.percentiles));
  write_file(dir / "bound.csv", pattern_csv(bound));
  if (cb) {
    const Evaluation ev = evaluate(cfg, arrays, *cb);
    const GainPattern gap = gap_map(ev.composite, bound);
    stats["codebook_size"] = cb->size();
    stats["composite"] = stats_json(ev.stats);
    const auto [lo, hi] = std::minmax_element(gap.gains_db.begin(), gap.gains_db.end());
    stats["gap"] = {{"min_db", *lo}, {"max_db", *hi}};
    write_file(dir / "pattern.csv", pattern_csv(ev.composite));
    write_file(dir / "gap.csv", pattern_csv(gap));
    out << "mean " << ev.stats.mean_db << " dB";
    for (const auto& [x, v] : ev.stats.percentiles) {
      out << ", p" << format_double(x) << " " << v << " dB";
    }
    out << "\n";
  }
  write_file(dir / "stats.json", stats.dump(2) + "\n");
  out << "wrote evaluation to " << dir.generic_string() << "\n";
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& configs, const std::string& out_dir,
                std::optional<std::vector<double>> percentiles, std::ostream& out) {
  if (configs.size() < 2) {
    throw ConfigError("compare needs at least two configs");
  }
  std::vector<RunConfig> runs;
  for (const auto& c : configs) {
    runs.push_back(load_run_config(c));
  }
  std::vector<double> pct = percentiles.value_or(runs.front().evaluation.percentiles);
  for (double x : pct) {
    if (!(x > 0.0 && x < 100.0)) {
      throw ConfigError("--percentiles: values must lie in (0, 100)");
    }
  }
  std::ostringstream csv;
  csv << "label,algorithm,size,mean_db,median_db";
  for (double x : pct) {
    csv << ",p" << format_double(x) << "_db";
  }
  csv << "\n";
  for (auto& cfg : runs) {
    cfg.evaluation.percentiles = pct;
    cfg.evaluation.percentiles.push_back(50.0);
    const LoadedArrays arrays = load_arrays(cfg);
    const DesignOutcome d = run_design(cfg, arrays);
    const Evaluation ev = evaluate(cfg, arrays, d.codebook);
    csv << cfg.label << ',' << to_string(cfg.algorithm.name) << ',' << d.codebook.size() << ','
        << format_double(ev.stats.mean_db) << ',' << format_double(ev.stats.percentiles.at(50.0));
    for (double x : pct) {
      csv << ',' << format_double(ev.stats.percentiles.at(x));
    }
    csv << "\n";
  }
  const fs::path dir = output_dir(out_dir.empty() ? std::nullopt : std::optional<fs::path>(out_dir));
  write_file(dir / "comparison.csv", csv.str());
  out << csv.str();
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analog beam codebook synthesis for antenna arrays", "beamcb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "beamcb 0.1.0");

  Overrides gen;
  std::string gen_id;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen-efield", "Write a synthetic ULA grid CSV and its spec sidecar");
  gen_cmd->add_option("-c,--config", gen.config, "JSON file with a 'synthetic' block or a run config");
  gen_cmd->add_option("-o,--output-dir", gen.output_dir, "Output directory");
  gen_cmd->add_option("--output", gen_output, "Output CSV path (overrides --output-dir)");
  gen_cmd->add_option("--id", gen_id, "Array id");
  add_array_flags(gen_cmd, gen);

  Overrides des;
  auto* design_cmd = app.add_subcommand("design", "Synthesize a codebook");
  add_run_flags(design_cmd, des);

  Overrides evo;
  std::string codebook_path;
  bool bound_only = false;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a codebook against the eigenvalue bound");
  add_run_flags(eval_cmd, evo);
  eval_cmd->add_option("--codebook", codebook_path, "Codebook JSON");
  eval_cmd->add_flag("--bound-only", bound_only, "Only emit the upper bound");

  std::vector<std::string> cmp_configs;
  std::string cmp_out;
  std::optional<std::vector<double>> cmp_pct;
  auto* cmp_cmd = app.add_subcommand("compare", "Design and evaluate several configs side by side");
  cmp_cmd->add_option("configs", cmp_configs, "Run configs")->required();
  cmp_cmd->add_option("-o,--output-dir", cmp_out, "Output directory");
  cmp_cmd->add_option("--percentiles", cmp_pct, "Percentiles to report");

  std::vector<std::string> check_paths;
  auto* check_cmd = app.add_subcommand("selfcheck", "Validate emitted files; with no paths run a smoke pipeline");
  check_cmd->add_option("paths", check_paths, "Files or directories to validate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      return cmd_gen_efield(gen, gen_id, gen_output, out);
    }
    if (design_cmd->parsed()) {
      return cmd_design(des, out, err);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(evo, codebook_path, bound_only, out);
    }
    if (cmp_cmd->parsed()) {
      return cmd_compare(cmp_configs, cmp_out, cmp_pct, out);
    }
    if (check_cmd->parsed()) {
      return selfcheck(check_paths, out, err);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

} // namespace beamcb::cli
