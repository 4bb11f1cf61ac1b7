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
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beamcb/codebook.hpp"
#include "beamcb/efield.hpp"

namespace beamcb {

/// Realized gain (2 pi / eta0) w^H M(dir) w. Throws LookupError off-mesh.
double beam_gain(const EFieldGrid& grid, const BeamWeights& w, const Direction& dir);

/// Array with the given id; throws InvalidArgument if absent.
const EFieldGrid& find_array(std::span<const EFieldGrid> grids, const std::string& array_id);

/// Per-direction coherence matrices of every array, resolved once so that
/// codebook synthesis can evaluate many beams against the same directions.
class CoherenceCache {
public:
  /// Every direction must be a mesh node of every array.
  CoherenceCache(std::span<const EFieldGrid> grids, const DirectionSet& dirs);

  std::size_t num_arrays() const { return ids_.size(); }
  std::size_t num_directions() const { return dirs_.size(); }
  const DirectionSet& directions() const { return dirs_; }
  const std::string& array_id(std::size_t array) const { return ids_[array]; }
  std::size_t array_index(const std::string& array_id) const;
  std::size_t num_elements(std::size_t array) const { return sizes_[array]; }

  const CoherenceMatrix& at(std::size_t array, std::size_t dir) const {
    return matrices_[array * dirs_.size() + dir];
  }

  /// Linear realized gain of w on the given array for every direction.
  std::vector<double> gains(std::size_t array, const BeamWeights& w) const;

  /// Linear realized-gain upper bound (2 pi / eta0) lambda_max(M) per array.
  std::vector<double> eigen_bound(std::size_t array) const;

private:
  DirectionSet dirs_;
  std::vector<std::string> ids_;
  std::vector<std::size_t> sizes_;
  std::vector<CoherenceMatrix> matrices_;
};

struct GainPattern {
  DirectionSet directions;
  std::vector<double> gains_db;
  std::string label;
};

/// Weighted mean of linear gains, in dB.
double weighted_mean_db(const DirectionSet& dirs, std::span<const double> linear);

/// Smallest gain g with F(g) >= percent / 100 under the weighted step CDF.
double weighted_percentile(const DirectionSet& dirs, std::span<const double> values, double percent);

struct CoverageStats {
  double mean_db = 0.0;
  std::map<double, double> percentiles;
  /// (gain dB, cumulative weight), one point per distinct gain.
  std::vector<std::pair<double, double>> cdf;
};

GainPattern beam_pattern(const EFieldGrid& grid, const BeamWeights& w, const DirectionSet& dirs);

/// Per-direction max over all entries, each evaluated on its own array.
GainPattern composite_pattern(std::span<const EFieldGrid> grids, const Codebook& cb,
                              const DirectionSet& dirs);
GainPattern composite_pattern(const CoherenceCache& cache, const Codebook& cb);

CoverageStats coverage_stats(const GainPattern& pattern, std::span<const double> percentiles);

/// Per-direction max over arrays of (2 pi / eta0) lambda_max(M).
GainPattern upper_bound_pattern(std::span<const EFieldGrid> grids, const DirectionSet& dirs);
GainPattern upper_bound_pattern(const CoherenceCache& cache);

/// bound - composite in dB. Throws InvalidArgument when the direction sets
/// differ or composite exceeds bound by more than 1e-9 dB.
GainPattern gap_map(const GainPattern& composite, const GainPattern& bound);

/// Pattern CSV: theta_deg,phi_deg,weight,gain_db
void write_pattern_csv(std::ostream& out, const GainPattern& pattern);

/// { "mean_db": .., "percentiles": {"50": ..}, "cdf": [[gain_db, cum], ..] }
std::string stats_to_json(const CoverageStats& stats);

} // namespace beamcb
