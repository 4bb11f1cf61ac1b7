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

#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace beamcb::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) {
      ok = ok || key == a;
    }
    if (!ok) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": missing or wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) {
    return fallback;
  }
  return get<T>(j, key, where);
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback, const std::string& where) {
  if (!j.contains(key)) {
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

CoverageRegion parse_region(const json& j, const std::string& where) {
  check_keys(j, {"theta", "phi"}, where);
  CoverageRegion r;
  auto range = [&](const char* key, double& lo, double& hi) {
    if (!j.contains(key)) {
      return;
    }
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(where + "." + key + ": expected [lo, hi]");
    }
    lo = v[0].get<double>();
    hi = v[1].get<double>();
  };
  range("theta", r.theta_lo, r.theta_hi);
  range("phi", r.phi_lo, r.phi_hi);
  try {
    r.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return r;
}

ordered_json region_to_json(const CoverageRegion& r) {
  ordered_json j;
  j["theta"] = {r.theta_lo, r.theta_hi};
  j["phi"] = {r.phi_lo, r.phi_hi};
  return j;
}

DirectionChoice parse_directions_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    return parse_direction_choice(j.get<std::string>());
  }
  if (j.is_number_integer() && j.get<long long>() > 0) {
    return {j.get<std::size_t>()};
  }
  throw ConfigError(where + ": expected \"native\" or a positive integer");
}

ordered_json directions_to_json(const DirectionChoice& c) {
  if (c.fibonacci == 0) {
    return "native";
  }
  return c.fibonacci;
}

SelectionCriterion parse_criterion(const json& j, const std::string& where) {
  const auto type = get<std::string>(j, "type", where);
  if (type == "mean") {
    check_keys(j, {"type", "region"}, where);
    MeanOverRegion c;
    if (j.contains("region")) {
      c.region = parse_region(j.at("region"), where + ".region");
    }
    return c;
  }
  if (type == "percentile") {
    check_keys(j, {"type", "points"}, where);
    PercentileWeighted c;
    const json& pts = j.contains("points") ? j.at("points") : json::array();
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ConfigError(where + ".points: expected [[percent, weight], ...]");
      }
      c.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return c;
  }
  throw ConfigError(where + ".type: expected \"mean\" or \"percentile\"");
}

ordered_json criterion_to_json(const SelectionCriterion& c) {
  ordered_json j;
  if (const auto* m = std::get_if<MeanOverRegion>(&c)) {
    j["type"] = "mean";
    j["region"] = region_to_json(m->region);
  } else {
    j["type"] = "percentile";
    j["points"] = ordered_json::array();
    for (const auto& [x, beta] : std::get<PercentileWeighted>(c).points) {
      j["points"].push_back({x, beta});
    }
  }
  return j;
}

StoppingRule parse_stop(const json& j, const std::string& where) {
  const auto type = get<std::string>(j, "type", where);
  if (type == "size") {
    check_keys(j, {"type", "K"}, where);
    return SizeLimit{get_count(j, "K", 0, where)};
  }
  if (type == "mean") {
    check_keys(j, {"type", "threshold_db", "region"}, where);
    MeanThreshold r;
    r.threshold_db = get<double>(j, "threshold_db", where);
    if (j.contains("region")) {
      r.region = parse_region(j.at("region"), where + ".region");
    }
    return r;
  }
  if (type == "percentile") {
    check_keys(j, {"type", "percent", "threshold_db"}, where);
    return PercentileThreshold{get<double>(j, "percent", where), get<double>(j, "threshold_db", where)};
  }
  throw ConfigError(where + ".type: expected \"size\", \"mean\" or \"percentile\"");
}

ordered_json stop_to_json(const StoppingRule& s) {
  ordered_json j;
  if (const auto* r = std::get_if<SizeLimit>(&s)) {
    j["type"] = "size";
    j["K"] = r->k;
  } else if (const auto* r = std::get_if<MeanThreshold>(&s)) {
    j["type"] = "mean";
    j["threshold_db"] = r->threshold_db;
    j["region"] = region_to_json(r->region);
  } else {
    const auto& p = std::get<PercentileThreshold>(s);
    j["type"] = "percentile";
    j["percent"] = p.percent;
    j["threshold_db"] = p.threshold_db;
  }
  return j;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") {
    return Algorithm::greedy;
  }
  if (name == "kmeans") {
    return Algorithm::kmeans;
  }
  if (name == "benchmark") {
    return Algorithm::benchmark;
  }
  if (name == "3c") {
    return Algorithm::ieee_3c;
  }
  throw ConfigError("algorithm.name: expected greedy, kmeans, benchmark or 3c, got '" + name + "'");
}

std::optional<int> parse_bits(const json& j) {
  if (j.is_null()) {
    return std::nullopt;
  }
  if (j.is_string() && j.get<std::string>() == "continuous") {
    return std::nullopt;
  }
  if (j.is_number_integer()) {
    const int b = j.get<int>();
    if (b < 1 || b > PhaseSpec::kMaxBits) {
      throw ConfigError("algorithm.phase_bits: expected 1..16 or null");
    }
    return b;
  }
  throw ConfigError("algorithm.phase_bits: expected 1..16 or null");
}

AlgorithmConfig parse_algorithm_block(const json& j) {
  const std::string where = "algorithm";
  check_keys(j,
             {"name", "K", "phase_bits", "seed", "n_rand", "init", "max_iterations", "criterion", "stop",
              "candidates", "spacing_lambda", "directions"},
             where);
  AlgorithmConfig a;
  a.name = parse_algorithm(get<std::string>(j, "name", where));
  a.k = get_count(j, "K", a.k, where);
  if (a.k < 1) {
    throw ConfigError("algorithm.K: must be >= 1");
  }
  if (j.contains("phase_bits")) {
    a.phase_bits = parse_bits(j.at("phase_bits"));
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      throw ConfigError("algorithm.seed: expected a non-negative integer");
    }
    a.seed = j.at("seed").get<std::uint64_t>();
  }
  a.n_rand = static_cast<int>(get_count(j, "n_rand", static_cast<std::size_t>(a.n_rand), where));
  if (a.n_rand < 1) {
    throw ConfigError("algorithm.n_rand: must be >= 1");
  }
  a.init = get_or<std::string>(j, "init", a.init, where);
  a.max_iterations = get_count(j, "max_iterations", a.max_iterations, where);
  if (j.contains("criterion")) {
    a.criterion = parse_criterion(j.at("criterion"), where + ".criterion");
  }
  if (j.contains("stop")) {
    a.stop = parse_stop(j.at("stop"), where + ".stop");
  }
  if (j.contains("candidates")) {
    const json& c = j.at("candidates");
    check_keys(c, {"count", "method"}, where + ".candidates");
    a.candidates.count_per_sphere = get_count(c, "count", a.candidates.count_per_sphere, where + ".candidates");
    const auto method = get_or<std::string>(c, "method", "eigen", where + ".candidates");
    if (method == "eigen") {
      a.candidates.method = CandidateMethod::eigen;
    } else if (method == "iterative") {
      a.candidates.method = CandidateMethod::iterative;
    } else {
      throw ConfigError("algorithm.candidates.method: expected \"eigen\" or \"iterative\"");
    }
  }
  if (j.contains("spacing_lambda")) {
    a.spacing_lambda = get<double>(j, "spacing_lambda", where);
  }
  if (j.contains("directions")) {
    a.directions = parse_directions_json(j.at("directions"), where + ".directions");
  }
  return a;
}

ArraySource parse_array(const json& j, std::size_t index, const std::filesystem::path& base_dir) {
  const std::string where = "arrays[" + std::to_string(index) + "]";
  check_keys(j, {"id", "file", "synthetic"}, where);
  ArraySource src;
  src.id = get_or<std::string>(j, "id", "", where);
  const bool has_file = j.contains("file");
  const bool has_syn = j.contains("synthetic");
  if (has_file == has_syn) {
    throw ConfigError(where + ": exactly one of 'file' or 'synthetic' is required");
  }
  if (has_file) {
    std::filesystem::path p = get<std::string>(j, "file", where);
    src.file = p.is_absolute() ? p : base_dir / p;
    if (src.id.empty()) {
      src.id = p.stem().string();
    }
    return src;
  }
  const json& s = j.at("synthetic");
  check_keys(s, {"elements", "spacing_lambda", "pattern_q", "sampling_factor", "axis", "mesh_step_deg"},
             where + ".synthetic");
  json plain = s;
  plain.erase("axis");
  plain.erase("mesh_step_deg");
  src.synthetic = parse_synthetic(plain);
  if (s.contains("axis")) {
    const json& ax = s.at("axis");
    if (ax.is_string()) {
      const auto name = ax.get<std::string>();
      if (name == "x") {
        src.axis = std::array<double, 3>{1, 0, 0};
      } else if (name == "y") {
        src.axis = std::array<double, 3>{0, 1, 0};
      } else if (name == "z") {
        src.axis = std::array<double, 3>{0, 0, 1};
      } else {
        throw ConfigError(where + ".synthetic.axis: expected x, y, z or [x, y, z]");
      }
    } else if (ax.is_array() && ax.size() == 3 && ax[0].is_number() && ax[1].is_number() && ax[2].is_number()) {
      src.axis = std::array<double, 3>{ax[0].get<double>(), ax[1].get<double>(), ax[2].get<double>()};
    } else {
      throw ConfigError(where + ".synthetic.axis: expected x, y, z or [x, y, z]");
    }
    src.mesh_step_deg = get_or<double>(s, "mesh_step_deg", 5.0, where + ".synthetic");
  }
  if (src.id.empty()) {
    src.id = "array" + std::to_string(index);
  }
  return src;
}

} // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
  case Algorithm::greedy:
    return "greedy";
  case Algorithm::kmeans:
    return "kmeans";
  case Algorithm::benchmark:
    return "benchmark";
  case Algorithm::ieee_3c:
    return "3c";
  }
  return "unknown";
}

PhaseSpec AlgorithmConfig::phase_spec() const {
  return phase_bits ? PhaseSpec::discrete(*phase_bits) : PhaseSpec::continuous();
}

DirectionChoice parse_direction_choice(const std::string& text) {
  if (text == "native") {
    return {};
  }
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(text, &pos);
    if (pos == text.size() && n > 0) {
      return {static_cast<std::size_t>(n)};
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("directions: expected \"native\" or a positive integer, got '" + text + "'");
}

SyntheticUlaSpec parse_synthetic(const json& j) {
  const std::string where = "synthetic";
  check_keys(j, {"elements", "spacing_lambda", "pattern_q", "sampling_factor"}, where);
  SyntheticUlaSpec s;
  s.num_elements = get_count(j, "elements", s.num_elements, where);
  s.spacing_over_lambda = get_or<double>(j, "spacing_lambda", s.spacing_over_lambda, where);
  s.pattern_q = get_or<double>(j, "pattern_q", s.pattern_q, where);
  if (j.contains("sampling_factor")) {
    s.sampling_factor = get_count(j, "sampling_factor", 0, where);
  }
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("synthetic: ") + e.what());
  }
  return s;
}

ordered_json synthetic_to_json(const SyntheticUlaSpec& spec) {
  ordered_json j;
  j["elements"] = spec.num_elements;
  j["spacing_lambda"] = spec.spacing_over_lambda;
  j["pattern_q"] = spec.pattern_q;
  j["sampling_factor"] = spec.effective_sampling_factor();
  return j;
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, {"label", "arrays", "algorithm", "evaluation", "output_dir"}, "config");
  RunConfig cfg;
  cfg.label = get_or<std::string>(j, "label", cfg.label, "config");
  if (j.contains("arrays")) {
    const json& arr = j.at("arrays");
    if (!arr.is_array()) {
      throw ConfigError("arrays: expected a list");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      cfg.arrays.push_back(parse_array(arr[i], i, base_dir));
      if (!ids.insert(cfg.arrays.back().id).second) {
        throw ConfigError("arrays: duplicate id '" + cfg.arrays.back().id + "'");
      }
    }
  }
  if (j.contains("algorithm")) {
    cfg.algorithm = parse_algorithm_block(j.at("algorithm"));
  }
  if (j.contains("evaluation")) {
    const json& e = j.at("evaluation");
    check_keys(e, {"directions", "region", "percentiles"}, "evaluation");
    if (e.contains("directions")) {
      cfg.evaluation.directions = parse_directions_json(e.at("directions"), "evaluation.directions");
    }
    if (e.contains("region")) {
      cfg.evaluation.region = parse_region(e.at("region"), "evaluation.region");
    }
    if (e.contains("percentiles")) {
      cfg.evaluation.percentiles.clear();
      for (const auto& p : e.at("percentiles")) {
        if (!p.is_number() || !(p.get<double>() > 0.0 && p.get<double>() < 100.0)) {
          throw ConfigError("evaluation.percentiles: values must lie in (0, 100)");
        }
        cfg.evaluation.percentiles.push_back(p.get<double>());
      }
    }
  }
  if (j.contains("output_dir")) {
    std::filesystem::path p = get<std::string>(j, "output_dir", "config");
    cfg.output_dir = p.is_absolute() ? p : base_dir / p;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunConfig cfg = parse_run_config(j, path.parent_path());
  if (!j.contains("label")) {
    cfg.label = path.stem().string();
  }
  return cfg;
}

ordered_json run_config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["label"] = cfg.label;
  j["arrays"] = ordered_json::array();
  for (const auto& a : cfg.arrays) {
    ordered_json e;
    e["id"] = a.id;
    if (a.file) {
      e["file"] = a.file->generic_string();
    } else {
      e["synthetic"] = synthetic_to_json(*a.synthetic);
      if (a.axis) {
        e["synthetic"]["axis"] = *a.axis;
        e["synthetic"]["mesh_step_deg"] = a.mesh_step_deg;
      }
    }
    j["arrays"].push_back(e);
  }
  const auto& al = cfg.algorithm;
  ordered_json a;
  a["name"] = to_string(al.name);
  a["K"] = al.k;
  a["phase_bits"] = al.phase_bits ? ordered_json(*al.phase_bits) : ordered_json(nullptr);
  a["seed"] = al.seed;
  a["n_rand"] = al.n_rand;
  a["init"] = al.init;
  a["max_iterations"] = al.max_iterations;
  a["criterion"] = criterion_to_json(al.criterion);
  a["stop"] = stop_to_json(al.stop.value_or(SizeLimit{al.k}));
  a["candidates"] = {{"count", al.candidates.count_per_sphere},
                     {"method", al.candidates.method == CandidateMethod::eigen ? "eigen" : "iterative"}};
  if (al.spacing_lambda) {
    a["spacing_lambda"] = *al.spacing_lambda;
  }
  a["directions"] = directions_to_json(al.directions);
  j["algorithm"] = a;
  ordered_json e;
  e["directions"] = directions_to_json(cfg.evaluation.directions);
  e["region"] = region_to_json(cfg.evaluation.region);
  e["percentiles"] = cfg.evaluation.percentiles;
  j["evaluation"] = e;
  return j;
}

LoadedArrays load_arrays(const RunConfig& cfg) {
  if (cfg.arrays.empty()) {
    throw ConfigError("no arrays configured");
  }
  LoadedArrays out;
  std::optional<DirectionSet> native;
  for (const auto& src : cfg.arrays) {
    if (src.file) {
      if (!std::filesystem::exists(*src.file)) {
        throw ConfigError("array file not found: " + src.file->string());
      }
      out.grids.push_back(load_efield(*src.file, src.id));
    } else if (src.axis) {
      MeshUlaSpec m;
      m.ula = *src.synthetic;
      m.axis = *src.axis;
      m.theta_step_deg = src.mesh_step_deg;
      m.phi_step_deg = src.mesh_step_deg;
      out.grids.push_back(generate_ula_mesh_efield(m, src.id));
    } else {
      SyntheticUla ula = generate_ula_efield(*src.synthetic, src.id);
      if (!native) {
        native = ula.directions;
      }
      out.grids.push_back(std::move(ula.grid));
    }
    if (!native) {
      const EFieldGrid& g = out.grids.back();
      // A single azimuth cut is taken as already sampled by measure.
      native = g.num_phi() == 1 ? mesh_directions_uniform(g) : mesh_directions(g);
    }
  }
  out.native = std::move(*native);
  return out;
}

DirectionSet resolve_directions(const DirectionChoice& choice, const LoadedArrays& arrays) {
  if (choice.fibonacci == 0) {
    return arrays.native;
  }
  return snap_to_grid(fibonacci_directions(choice.fibonacci), arrays.grids.front());
}

} // namespace beamcb::cli
