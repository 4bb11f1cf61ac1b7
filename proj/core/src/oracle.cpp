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

#include "beamcb/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "beamcb/rng.hpp"

namespace beamcb::oracle {

CoherenceMatrix random_instance(const RandomInstanceSpec& spec) {
  if (spec.num_elements < 1) {
    throw InvalidArgument("random instance needs at least one element");
  }
  if (spec.rank < 1 || spec.rank > spec.num_elements) {
    throw InvalidArgument("random instance rank must lie in [1, L]");
  }
  const auto n = static_cast<Eigen::Index>(spec.num_elements);
  Rng rng(spec.seed);
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t r = 0; r < spec.rank; ++r) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (spec.magnitudes == Magnitudes::gaussian) {
        v[i] = rng.complex_normal();
      } else {
        v[i] = std::polar(1.0, kTwoPi * rng.uniform());
      }
    }
    m += v * v.adjoint();
  }
  return CoherenceMatrix(std::move(m));
}

BruteForceResult brute_force_b3(const CoherenceMatrix& m, int bits) {
  if (bits < 1) {
    throw InvalidArgument("brute force needs bits >= 1");
  }
  const std::size_t L = m.size();
  if (L == 0) {
    throw InvalidArgument("empty coherence matrix");
  }
  if (static_cast<std::size_t>(bits) * L > 20) {
    throw InvalidArgument("brute force refused: 2^(b L) exceeds 2^20 phase assignments");
  }
  const std::size_t levels = std::size_t{1} << bits;
  const double step = kTwoPi / static_cast<double>(levels);
  const double amp = 1.0 / std::sqrt(static_cast<double>(L));
  const CMatrix& a = m.matrix();

  // Odometer over the digits of elements 1..L-1; element 0 stays at phase 0.
  std::vector<std::size_t> digits(L, 0);
  std::vector<cplx> w(L);
  std::vector<std::size_t> best_digits(L, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  while (true) {
    for (std::size_t i = 0; i < L; ++i) {
      w[i] = std::polar(amp, step * static_cast<double>(digits[i]));
    }
    double g = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      cplx row{0.0, 0.0};
      for (std::size_t k = 0; k < L; ++k) {
        row += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * w[k];
      }
      g += (std::conj(w[i]) * row).real();
    }
    ++evaluations;
    if (g > best) {
      best = g;
      best_digits = digits;
    }
    std::size_t pos = 1;
    while (pos < L && ++digits[pos] == levels) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos >= L) {
      break;
    }
  }
  std::vector<double> phases(L);
  for (std::size_t i = 0; i < L; ++i) {
    phases[i] = step * static_cast<double>(best_digits[i]);
  }
  return {best, BeamWeights::from_phases(phases, PhaseSpec::discrete(bits)), evaluations};
}

} // namespace beamcb::oracle
