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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beamcb/beamopt.hpp"

namespace beamcb {

struct CodebookEntry {
  std::string array_id;
  BeamWeights weights;
};

/// Ordered set of beams, each bound to one array. Only one array is active at
/// a time, so coverage is the max over all entries.
struct Codebook {
  std::vector<CodebookEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  /// Common phase resolution of all entries; nullopt if mixed or empty.
  std::optional<PhaseSpec> phase_spec() const;
};

/// { "phase_bits": b | null, "entries": [ { "array": id, "weights": [[re, im], ...] } ] }
/// Doubles are written with round-trip precision.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);
void save_codebook(const std::filesystem::path& path, const Codebook& cb);
Codebook load_codebook(const std::filesystem::path& path);

} // namespace beamcb
