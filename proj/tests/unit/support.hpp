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

#include <complex>
#include <vector>

#include "beamcb/efield.hpp"

namespace beamcb::test {

/// Grid with the given per-node fields; fields[node][elem], node = t * P + p.
inline EFieldGrid make_grid(std::size_t num_elements, std::vector<double> theta, std::vector<double> phi,
                            const std::vector<std::vector<cplx>>& et, const std::vector<std::vector<cplx>>& ep,
                            std::string id = "a") {
  const std::size_t nodes = theta.size() * phi.size();
  std::vector<cplx> e_theta(num_elements * nodes);
  std::vector<cplx> e_phi(num_elements * nodes);
  for (std::size_t l = 0; l < num_elements; ++l) {
    for (std::size_t n = 0; n < nodes; ++n) {
      e_theta[l * nodes + n] = et[n][l];
      e_phi[l * nodes + n] = ep[n][l];
    }
  }
  return EFieldGrid(std::move(id), num_elements, std::move(theta), std::move(phi), std::move(e_theta),
                    std::move(e_phi));
}

/// Full-sphere mesh with one isotropic, theta-polarized element of unit gain.
inline EFieldGrid isotropic_mesh(double step_deg = 10.0) {
  std::vector<double> theta;
  std::vector<double> phi;
  for (double t = 0.0; t <= 180.0 + 1e-9; t += step_deg) {
    theta.push_back(t);
  }
  for (double p = 0.0; p < 360.0 - 1e-9; p += step_deg) {
    phi.push_back(p);
  }
  const std::size_t nodes = theta.size() * phi.size();
  std::vector<cplx> et(nodes, cplx(kSyntheticFieldScale, 0.0));
  std::vector<cplx> ep(nodes, cplx(0.0, 0.0));
  return EFieldGrid("iso", 1, theta, phi, et, ep);
}

} // namespace beamcb::test
