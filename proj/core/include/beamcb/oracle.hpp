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

#include <cstddef>
#include <cstdint>

#include "beamcb/beamopt.hpp"
#include "beamcb/coherence.hpp"

namespace beamcb::oracle {

enum class Magnitudes {
  /// i.i.d. CN(0, 1) entries.
  gaussian,
  /// Unit-modulus entries with uniform random phase.
  unit_modulus,
};

struct RandomInstanceSpec {
  std::size_t num_elements = 4;
  std::size_t rank = 2;
  std::uint64_t seed = 0;
  Magnitudes magnitudes = Magnitudes::gaussian;
};

/// M = sum_r v_r v_r^H with independent random v_r.
CoherenceMatrix random_instance(const RandomInstanceSpec& spec);

struct BruteForceResult {
  double gain = 0.0;
  BeamWeights weights;
  std::size_t evaluations = 0;
};

/// Exhaustive search over all b-bit phase assignments with the first
/// element's phase pinned to zero. Refuses searches above 2^20 points.
BruteForceResult brute_force_b3(const CoherenceMatrix& m, int bits);

} // namespace beamcb::oracle
