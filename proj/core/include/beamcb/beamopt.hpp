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
#include <string_view>
#include <vector>

#include "beamcb/coherence.hpp"
#include "beamcb/common.hpp"

namespace beamcb {

/// Phase-shifter resolution: continuous, or b bits (2^b equispaced states).
class PhaseSpec {
public:
  static constexpr int kMaxBits = 16;

  static PhaseSpec continuous() { return PhaseSpec(0); }
  /// Throws InvalidArgument unless 1 <= bits <= 16.
  static PhaseSpec discrete(int bits);

  bool is_discrete() const { return bits_ > 0; }
  /// 0 for continuous.
  int bits() const { return bits_; }
  std::size_t levels() const { return std::size_t{1} << bits_; }
  double step() const { return kTwoPi / static_cast<double>(levels()); }

  /// Wraps onto [0, 2 pi) and, when discrete, rounds to the lattice.
  double apply(double phase) const;

  bool operator==(const PhaseSpec&) const = default;

private:
  explicit PhaseSpec(int bits) : bits_(bits) {}
  int bits_;
};

/// Nearest lattice point k 2 pi / 2^bits in circular distance; ties round down.
double quantize_phase(double phase, int bits);

/// Unit-norm, unimodular weight vector: every |w_i| = 1/sqrt(L) and, for
/// discrete phase specs, every arg(w_i) on the 2 pi / 2^b lattice.
class BeamWeights {
public:
  /// w_i = exp(j apply(phase_i)) / sqrt(L).
  static BeamWeights from_phases(std::span<const double> phases, PhaseSpec spec);

  /// Projects an arbitrary vector onto the feasible set by keeping only the
  /// (quantized) phase of each entry. Zero entries get phase 0.
  static BeamWeights cophase(const CVector& v, PhaseSpec spec);

  /// Adopts w as-is after checking the invariants; throws InvalidArgument.
  static BeamWeights from_vector(const CVector& w, PhaseSpec spec);

  const CVector& vector() const { return w_; }
  PhaseSpec phase_spec() const { return spec_; }
  std::size_t size() const { return static_cast<std::size_t>(w_.size()); }

  /// Phases in [0, 2 pi).
  std::vector<double> phases() const;

  /// w^H M w.
  double gain(const CoherenceMatrix& m) const { return m.quadratic_form(w_); }

  bool operator==(const BeamWeights& other) const;

private:
  BeamWeights(CVector w, PhaseSpec spec) : w_(std::move(w)), spec_(spec) {}
  CVector w_;
  PhaseSpec spec_;
};

struct Eigenpair {
  double value = 0.0;
  CVector vector;
};

/// Largest eigenvalue and a unit eigenvector whose first nonzero entry is real
/// positive. The zero matrix yields (0, e_1).
Eigenpair max_eigenpair(const CoherenceMatrix& m);

struct SdrOptions {
  /// Stop once the certified duality gap is below tol * trace(M).
  double tol = 1e-9;
  int max_sweeps = 200000;
  /// Eigenvalues of W below rank_tol * lambda_max(W) do not count toward rank.
  double rank_tol = 1e-6;
};

/// Solution of max tr(MW) s.t. diag(W) = 1/L, W PSD.
struct SdrSolution {
  CMatrix w;
  double objective = 0.0;
  /// Upper bound on (optimum - objective) from a feasible dual point.
  double duality_gap = 0.0;
  int sweeps = 0;
  std::size_t rank = 0;
};

class SdrNotConverged : public Error {
public:
  SdrNotConverged(SdrSolution best, double gap);
  const SdrSolution& best() const { return best_; }
  double gap() const { return gap_; }

private:
  SdrSolution best_;
  double gap_;
};

/// Row-by-row block coordinate ascent on the factorization W = V V^H / L with
/// unit-norm rows. Each sweep replaces row i by the normalized sum
/// sum_{k != i} M_ik v_k. Convergence is certified through the dual problem
/// min sum(y) s.t. diag(y) >= M.
SdrSolution solve_sdr(const CoherenceMatrix& m, const SdrOptions& options = {});
SdrSolution solve_sdr(const CoherenceMatrix& m, double tol);

/// Draws n_rand vectors U Lambda^(1/2) xi with xi ~ CN(0, I) from the
/// eigendecomposition of W, maps each to (1/sqrt(L)) exp(j Q(arg)) and keeps
/// the best by w^H M w (first wins ties). In continuous mode a numerically
/// rank-one W short-circuits to its co-phased principal eigenvector.
BeamWeights gaussian_randomization(const SdrSolution& sdr, const CoherenceMatrix& m, int n_rand,
                                   PhaseSpec spec, std::uint64_t seed);

struct DescentResult {
  BeamWeights weights;
  /// Objective before the first sweep and after every sweep.
  std::vector<double> objectives;
  int sweeps = 0;
};

/// Cyclic update w_i <- (1/sqrt(L)) exp(j Q(arg(sum_{k != i} M_ik w_k))).
/// Stops when a sweep gains less than 1e-12 trace(M), or at the sweep cap
/// (10 L 2^b discrete, 1000 continuous). A zero sum leaves w_i unchanged.
DescentResult coordinate_descent(const CoherenceMatrix& m, const BeamWeights& init, PhaseSpec spec);

enum class BeamStrategy { eigen, sdr_grp, sdr_grp_cd };

std::string_view to_string(BeamStrategy s);
/// Throws InvalidArgument on unknown names.
BeamStrategy parse_strategy(std::string_view name);

struct DesignOptions {
  int n_rand = 1000;
  SdrOptions sdr;
};

/// eigen: co-phased, quantized principal eigenvector.
/// sdr_grp: SDR followed by Gaussian randomization.
/// sdr_grp_cd: sdr_grp refined by coordinate descent.
BeamWeights design_beam(const CoherenceMatrix& m, PhaseSpec spec, BeamStrategy strategy,
                        std::uint64_t seed, const DesignOptions& options = {});

} // namespace beamcb
