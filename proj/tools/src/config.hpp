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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamcb/synthesis.hpp"

namespace beamcb::cli {

/// Bad configuration or flags; maps to exit code 2.
class ConfigError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

struct ArraySource {
  std::string id;
  /// Grid CSV on disk.
  std::optional<std::filesystem::path> file;
  /// Synthetic ULA. Without an axis it is the 1-D theta cut, with one it is
  /// sampled on a full theta x phi mesh.
  std::optional<SyntheticUlaSpec> synthetic;
  std::optional<std::array<double, 3>> axis;
  double mesh_step_deg = 5.0;
};

enum class Algorithm { greedy, kmeans, benchmark, ieee_3c };
std::string_view to_string(Algorithm a);

/// 0 selects the arrays' own sample directions.
struct DirectionChoice {
  std::size_t fibonacci = 0;
};

struct AlgorithmConfig {
  Algorithm name = Algorithm::kmeans;
  std::size_t k = 4;
  std::optional<int> phase_bits = 5;
  std::uint64_t seed = 0;
  int n_rand = 1000;
  std::string init = "benchmark";
  std::size_t max_iterations = 50;
  SelectionCriterion criterion = MeanOverRegion{};
  std::optional<StoppingRule> stop;
  CandidateParams candidates;
  std::optional<double> spacing_lambda;
  DirectionChoice directions;

  PhaseSpec phase_spec() const;
};

struct EvaluationConfig {
  DirectionChoice directions;
  CoverageRegion region;
  std::vector<double> percentiles{10.0, 50.0, 90.0};
};

struct RunConfig {
  std::string label = "run";
  std::vector<ArraySource> arrays;
  AlgorithmConfig algorithm;
  EvaluationConfig evaluation;
  std::optional<std::filesystem::path> output_dir;
};

/// Relative file paths are resolved against base_dir.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
/// The label defaults to the file stem.
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::ordered_json run_config_to_json(const RunConfig& cfg);

SyntheticUlaSpec parse_synthetic(const nlohmann::json& j);
nlohmann::ordered_json synthetic_to_json(const SyntheticUlaSpec& spec);

struct LoadedArrays {
  std::vector<EFieldGrid> grids;
  /// Native direction set of the first array.
  DirectionSet native;
};

LoadedArrays load_arrays(const RunConfig& cfg);

/// Native set, or a Fibonacci set snapped to the first array's mesh.
DirectionSet resolve_directions(const DirectionChoice& choice, const LoadedArrays& arrays);

/// Parses "native" or a positive integer.
DirectionChoice parse_direction_choice(const std::string& text);

} // namespace beamcb::cli
