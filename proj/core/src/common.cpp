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

#include "beamcb/common.hpp"

#include <algorithm>
#include <cmath>

namespace beamcb {

double to_db(double linear) {
  if (!(linear > 0.0)) {
    return kDbFloor;
  }
  return std::max(10.0 * std::log10(linear), kDbFloor);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double wrap_phase(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  // fmod of a tiny negative value can land exactly on 2 pi after the shift.
  if (r >= kTwoPi) {
    r = 0.0;
  }
  return r;
}

} // namespace beamcb
