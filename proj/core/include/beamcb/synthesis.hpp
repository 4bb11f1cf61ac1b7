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
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "beamcb/codebook.hpp"
#include "beamcb/efield.hpp"
#include "beamcb/metrics.hpp"

namespace beamcb {

enum class CandidateMethod { eigen, iterative };

struct Candidate {
  std::string array_id;
  BeamWeights weights;
  Direction aim;
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  CandidateMethod method = CandidateMethod::eigen;
};

struct CandidateParams {
  std::size_t count_per_sphere = 363;
  CandidateMethod method = CandidateMethod::eigen;
  int n_rand = 1000;
};

/// count Fibonacci directions snapped to every array's mesh. Per array (in
/// input order) and per direction one beam: the quantized principal
/// eigenvector (eigen) or the SDR + randomization + descent pipeline
/// (iterative).
CandidateSet generate_candidates(std::span<const EFieldGrid> grids, std::size_t count_per_sphere,
                                 CandidateMethod method, PhaseSpec spec, std::uint64_t seed,
                                 int n_rand = 1000);

/// Weighted mean of linear composite gain over a region.
struct MeanOverRegion {
  CoverageRegion region;
};

/// sum_i beta_i * percentile(X_i) with percentiles in dB.
struct PercentileWeighted {
  std::vector<std::pair<double, double>> points; ///< (X in (0, 100), beta >= 0)
};

using SelectionCriterion = std::variant<MeanOverRegion, PercentileWeighted>;

struct SizeLimit {
  std::size_t k = 1;
};
/// Stop once the mean composite gain over the region exceeds threshold_db.
struct MeanThreshold {
  double threshold_db = 0.0;
  CoverageRegion region;
};
/// Stop once the X-th percentile of composite gain exceeds threshold_db.
struct PercentileThreshold {
  double percent = 50.0;
  double threshold_db = 0.0;
};

using StoppingRule = std::variant<SizeLimit, MeanThreshold, PercentileThreshold>;

void validate(const SelectionCriterion& criterion);
void validate(const StoppingRule& rule);

/// Criterion value of a linear composite gain vector over dirs. Mean
/// criteria are reported in dB.
double utility(const SelectionCriterion& criterion, const DirectionSet& dirs,
               std::span<const double> composite_linear);

struct GreedyResult {
  Codebook codebook;
  /// Candidate index of each pick.
  std::vector<std::size_t> picks;
  /// Utility after each pick.
  std::vector<double> utility_trace;
  bool pool_exhausted = false;
};

/// Adds the remaining candidate maximizing the utility of the enlarged
/// codebook (lowest index on ties) until the stopping rule holds.
GreedyResult greedy_codebook(const CandidateSet& candidates, std::span<const EFieldGrid> grids,
                             const SelectionCriterion& criterion, const StoppingRule& stop,
                             const DirectionSet& eval_set);

struct GreedyInit {
  CandidateParams candidates;
  SelectionCriterion criterion = MeanOverRegion{};
};
struct UniformInit {};
struct ExplicitInit {
  Codebook codebook;
};
using KMeansInit = std::variant<GreedyInit, UniformInit, ExplicitInit>;

struct KMeansConfig {
  std::size_t k = 4;
  KMeansInit init = UniformInit{};
  DirectionSet direction_set;
  PhaseSpec phase_spec = PhaseSpec::discrete(5);
  int n_rand = 1000;
  std::size_t max_iterations = 50;
  std::uint64_t seed = 0;
};

enum class KMeansStop { converged, assignments_unchanged, max_iterations };
std::string_view to_string(KMeansStop s);

struct KMeansResult {
  Codebook codebook;
  Codebook initial;
  /// Weighted mean composite gain (dB): initial codebook first, then after
  /// every iteration.
  std::vector<double> mean_gain_trace_db;
  /// Assignment (beam index) of every direction for the final codebook.
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
  KMeansStop stop = KMeansStop::max_iterations;
};

/// Alternates assignment of each direction to its best beam and re-solving
/// each beam on the weighted coherence sum of its cluster. A beam stays on
/// its initial array, keeps its weights when its cluster is empty, and only
/// accepts an update that does not lower its cluster objective.
KMeansResult kmeans_codebook(const KMeansConfig& config, std::span<const EFieldGrid> grids);

/// Assigns every direction to the entry with the largest gain, lowest index
/// on ties.
std::vector<std::size_t> assign_directions(const CoherenceCache& cache, const Codebook& cb);

/// K Fibonacci directions; each gets the quantized principal eigenvector of
/// the array with the largest lambda_max there (lowest index on ties).
Codebook uniform_init(std::size_t k, std::span<const EFieldGrid> grids, PhaseSpec spec);

/// Aim angles acos(-1 + (2k - 1) / K') in degrees, k = 1..K'.
std::vector<double> benchmark_aims_deg(std::size_t k_prime);

/// w(l, k) = exp(j Q(2 pi (d/lambda) l (-1 + (2k-1)/K'))) / sqrt(L), l = 0..L-1.
Codebook benchmark_codebook(std::size_t num_elements, double spacing_over_lambda,
                            std::size_t k_prime, PhaseSpec spec, const std::string& array_id);

/// Same per-array benchmark replicated on every array.
Codebook benchmark_codebook(std::span<const EFieldGrid> grids, double spacing_over_lambda,
                            std::size_t k_prime, PhaseSpec spec);

/// 2^b-phase generalization of the 802.15.3c codebook:
/// w(l, k) = exp(j (2 pi / 2^b) floor((l-1) mod(k-1+K'/2, K') / (K'/2^b))) / sqrt(L),
/// 1-based l and k.
Codebook codebook_802_15_3c(std::size_t num_elements, std::size_t k_prime, int bits,
                            const std::string& array_id);
Codebook codebook_802_15_3c(std::span<const EFieldGrid> grids, std::size_t k_prime, int bits);

/// Keeps directions inside region and renormalizes their weights. Throws
/// InvalidArgument if nothing is left.
DirectionSet restrict_region(const DirectionSet& set, const CoverageRegion& region);

/// Per-beam aim (argmax-gain direction) and peak gain.
struct BeamSummary {
  std::string array_id;
  Direction aim;
  double peak_gain_db = 0.0;
};
std::vector<BeamSummary> summarize_codebook(const CoherenceCache& cache, const Codebook& cb);
std::string summary_text(const std::vector<BeamSummary>& beams);

} // namespace beamcb
