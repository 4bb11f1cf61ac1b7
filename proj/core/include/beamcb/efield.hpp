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

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamcb/coherence.hpp"
#include "beamcb/common.hpp"

namespace beamcb {

/// Zenith angle theta in [0, 180] and azimuth phi in [0, 360), degrees.
struct Direction {
  double theta_deg = 90.0;
  double phi_deg = 0.0;

  /// Validates theta and wraps phi onto [0, 360).
  static Direction make(double theta_deg, double phi_deg);

  bool operator==(const Direction&) const = default;
};

struct MeshIndex {
  std::size_t theta = 0;
  std::size_t phi = 0;

  bool operator==(const MeshIndex&) const = default;
};

/// Sampled far-field response (r*E, volts) of every element of one array for
/// unit incident power, on a theta x phi lattice.
class EFieldGrid {
public:
  /// Field tensors are element-major: index ((elem * T) + t) * P + p.
  /// Throws InvalidArgument if any invariant fails.
  EFieldGrid(std::string array_id, std::size_t num_elements, std::vector<double> theta_axis,
             std::vector<double> phi_axis, std::vector<cplx> e_theta, std::vector<cplx> e_phi);

  const std::string& array_id() const { return array_id_; }
  std::size_t num_elements() const { return num_elements_; }
  const std::vector<double>& theta_axis() const { return theta_axis_; }
  const std::vector<double>& phi_axis() const { return phi_axis_; }
  std::size_t num_theta() const { return theta_axis_.size(); }
  std::size_t num_phi() const { return phi_axis_.size(); }
  std::size_t num_nodes() const { return theta_axis_.size() * phi_axis_.size(); }

  std::span<const cplx> e_theta_data() const { return e_theta_; }
  std::span<const cplx> e_phi_data() const { return e_phi_; }

  cplx e_theta(std::size_t elem, MeshIndex idx) const { return e_theta_[offset(elem, idx)]; }
  cplx e_phi(std::size_t elem, MeshIndex idx) const { return e_phi_[offset(elem, idx)]; }

  CVector theta_vector(MeshIndex idx) const;
  CVector phi_vector(MeshIndex idx) const;

  Direction direction_at(MeshIndex idx) const;

  /// Exact mesh node for dir (1e-9 degree tolerance), if any.
  std::optional<MeshIndex> find(const Direction& dir) const;

  /// Like find() but throws LookupError for off-mesh directions.
  MeshIndex locate(const Direction& dir) const;

  /// Nearest theta index and nearest phi index (circular); ties go to the
  /// lower index.
  MeshIndex nearest(const Direction& dir) const;

  /// True when both grids share identical theta and phi axes.
  bool same_mesh(const EFieldGrid& other) const;

private:
  std::size_t offset(std::size_t elem, MeshIndex idx) const {
    return (elem * theta_axis_.size() + idx.theta) * phi_axis_.size() + idx.phi;
  }

  std::string array_id_;
  std::size_t num_elements_;
  std::vector<double> theta_axis_;
  std::vector<double> phi_axis_;
  std::vector<cplx> e_theta_;
  std::vector<cplx> e_phi_;
};

/// Directions with quadrature weights summing to one.
class DirectionSet {
public:
  DirectionSet() = default;

  /// Throws InvalidArgument unless sizes agree, weights are nonnegative and
  /// sum to one within 1e-12.
  DirectionSet(std::vector<Direction> directions, std::vector<double> weights);

  static DirectionSet uniform(std::vector<Direction> directions);

  /// Scales raw nonnegative weights to sum to one.
  static DirectionSet normalized(std::vector<Direction> directions, std::vector<double> raw_weights);

  const std::vector<Direction>& directions() const { return directions_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return directions_.size(); }
  bool empty() const { return directions_.empty(); }
  const Direction& operator[](std::size_t i) const { return directions_[i]; }

  bool operator==(const DirectionSet&) const = default;

private:
  std::vector<Direction> directions_;
  std::vector<double> weights_;
};

/// Closed box on the sphere. phi_lo > phi_hi wraps through 0 degrees;
/// phi range [0, 360] covers every azimuth.
struct CoverageRegion {
  double theta_lo = 0.0;
  double theta_hi = 180.0;
  double phi_lo = 0.0;
  double phi_hi = 360.0;

  static CoverageRegion full_sphere() { return {}; }

  void validate() const;
  bool contains(const Direction& dir) const;
  bool is_full_sphere() const;
};

/// Uniform linear array of identical elements with pattern p(theta) = sin^q(theta).
struct SyntheticUlaSpec {
  std::size_t num_elements = 4;
  double spacing_over_lambda = 0.5;
  double pattern_q = 0.0;
  /// Directions are acos of 2a+1 equispaced x in [-1, 1]; defaults to 30 L.
  std::optional<std::size_t> sampling_factor;

  std::size_t effective_sampling_factor() const {
    return sampling_factor.value_or(30 * num_elements);
  }
  void validate() const;
};

/// Synthetic fields are stored in volts: the unit-amplitude ULA response is
/// multiplied by this so realized gain equals |w^H e|^2 of the unscaled model.
inline const double kSyntheticFieldScale = std::sqrt(kEta0 / kTwoPi);

struct SyntheticUla {
  EFieldGrid grid;
  DirectionSet directions;
};

/// ULA along the theta = 0 axis sampled at theta = acos(x), phi = 0. Element
/// l (0-based) carries sqrt(p(theta)) exp(j 2 pi (d/lambda) cos(theta) l) in
/// the Theta component; the Phi component is zero. The direction set lists
/// x = -1 .. 1 in order with uniform weights.
SyntheticUla generate_ula_efield(const SyntheticUlaSpec& spec, std::string array_id = "ula");

/// ULA with an arbitrary axis sampled on a full theta x phi lattice, used to
/// assemble multi-array terminals. The element pattern is sin^q of the angle
/// to the array axis, the Theta component carries the field.
struct MeshUlaSpec {
  SyntheticUlaSpec ula;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double theta_step_deg = 5.0;
  double phi_step_deg = 5.0;
};
EFieldGrid generate_ula_mesh_efield(const MeshUlaSpec& spec, std::string array_id);

/// Quasi-uniform spherical lattice: z_i = 1 - (2i+1)/N, phi_i = 360 i / golden
/// ratio (mod 360), uniform weights.
DirectionSet fibonacci_directions(std::size_t count);

/// All mesh nodes, theta-major, weighted by sin(theta) (uniform if every node
/// sits on a pole).
DirectionSet mesh_directions(const EFieldGrid& grid);

/// All mesh nodes with equal weights.
DirectionSet mesh_directions_uniform(const EFieldGrid& grid);

/// Moves every direction onto its nearest mesh node; weights and duplicates kept.
DirectionSet snap_to_grid(const DirectionSet& set, const EFieldGrid& grid);

/// Throws LookupError for off-mesh directions.
CoherenceMatrix coherence_matrix(const EFieldGrid& grid, const Direction& dir);
CoherenceMatrix coherence_matrix(const EFieldGrid& grid, MeshIndex idx);

CoherenceMatrix coherence_sum(const EFieldGrid& grid, std::span<const Direction> dirs);

/// Sum of scale_i * M(dir_i).
CoherenceMatrix coherence_sum(const EFieldGrid& grid, std::span<const Direction> dirs,
                              std::span<const double> scales);

// Grid CSV: header elem,theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi;
// one row per (element, theta, phi), full product required, any row order.
EFieldGrid read_efield_csv(std::istream& in, std::string array_id);
EFieldGrid load_efield(const std::filesystem::path& path);
EFieldGrid load_efield(const std::filesystem::path& path, std::string array_id);
void write_efield_csv(std::ostream& out, const EFieldGrid& grid);
void save_efield(const std::filesystem::path& path, const EFieldGrid& grid);

} // namespace beamcb
