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
#include <random>

#include "beamcb/common.hpp"

namespace beamcb {

/// Seedable random stream with a platform-independent output sequence.
///
/// Bits come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. Uniform and normal variates are derived here rather than through
/// the <random> distributions, which differ between standard libraries:
///   - uniform(): top 53 bits of one 64-bit draw, scaled to [0, 1)
///   - normal():  Box-Muller on two uniform() draws, both outputs used in order
///   - complex_normal(): real then imaginary part, each normal() * sqrt(1/2),
///     so E|z|^2 = 1
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  cplx complex_normal();

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace beamcb
