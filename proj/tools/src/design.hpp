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

#include <string>
#include <vector>

#include "config.hpp"

namespace beamcb::cli {

struct DesignOutcome {
  Codebook codebook;
  /// "ok", "pool_exhausted", or a K-Means stop reason.
  std::string status = "ok";
  std::vector<std::string> warnings;
  nlohmann::ordered_json trace;
};

DesignOutcome run_design(const RunConfig& cfg, const LoadedArrays& arrays);

struct Evaluation {
  GainPattern composite;
  CoverageStats stats;
};

Evaluation evaluate(const RunConfig& cfg, const LoadedArrays& arrays, const Codebook& cb);

/// Fails with ConfigError when an entry references an unknown array or has
/// the wrong number of weights.
void check_codebook(const Codebook& cb, const std::vector<EFieldGrid>& grids);

} // namespace beamcb::cli
