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

#include "beamcb/common.hpp"

namespace beamcb {

/// Hermitian PSD matrix whose quadratic form w^H M w is the beamforming power
/// of weight vector w. Built from the per-element Theta/Phi field vectors of
/// one direction, or summed over a set of directions.
class CoherenceMatrix {
public:
  CoherenceMatrix() = default;
  explicit CoherenceMatrix(CMatrix m);

  static CoherenceMatrix zero(std::size_t num_elements);

  /// e_theta e_theta^H + e_phi e_phi^H
  static CoherenceMatrix from_fields(const CVector& e_theta, const CVector& e_phi);

  const CMatrix& matrix() const { return m_; }
  std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

  /// Re(w^H M w); the imaginary part vanishes for Hermitian M.
  double quadratic_form(const CVector& w) const;

  CoherenceMatrix& operator+=(const CoherenceMatrix& other);
  CoherenceMatrix& add_scaled(const CoherenceMatrix& other, double scale);

  /// Hermitian within rel_tol (relative to the largest entry) and all
  /// eigenvalues >= -psd_tol * trace.
  bool is_hermitian_psd(double rel_tol = 1e-12, double psd_tol = 1e-10) const;

  /// Number of eigenvalues above rel_tol * lambda_max.
  std::size_t numerical_rank(double rel_tol = 1e-9) const;

private:
  CMatrix m_;
};

} // namespace beamcb
