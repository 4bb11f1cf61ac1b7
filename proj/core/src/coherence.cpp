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

#include "beamcb/coherence.hpp"

#include <Eigen/Eigenvalues>

namespace beamcb {

CoherenceMatrix::CoherenceMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidArgument("coherence matrix must be square");
  }
}

CoherenceMatrix CoherenceMatrix::zero(std::size_t num_elements) {
  const auto n = static_cast<Eigen::Index>(num_elements);
  return CoherenceMatrix(CMatrix::Zero(n, n));
}

CoherenceMatrix CoherenceMatrix::from_fields(const CVector& e_theta, const CVector& e_phi) {
  if (e_theta.size() != e_phi.size()) {
    throw InvalidArgument("field vectors differ in length");
  }
  return CoherenceMatrix(e_theta * e_theta.adjoint() + e_phi * e_phi.adjoint());
}

double CoherenceMatrix::quadratic_form(const CVector& w) const {
  return w.dot(m_ * w).real();
}

CoherenceMatrix& CoherenceMatrix::operator+=(const CoherenceMatrix& other) {
  if (m_.size() == 0) {
    m_ = other.m_;
    return *this;
  }
  m_ += other.m_;
  return *this;
}

CoherenceMatrix& CoherenceMatrix::add_scaled(const CoherenceMatrix& other, double scale) {
  if (m_.size() == 0) {
    m_ = other.m_ * scale;
    return *this;
  }
  m_ += other.m_ * scale;
  return *this;
}

bool CoherenceMatrix::is_hermitian_psd(double rel_tol, double psd_tol) const {
  if (m_.size() == 0) {
    return true;
  }
  const double scale = m_.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    return true;
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > rel_tol * scale) {
    return false;
  }
  const CMatrix herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -psd_tol * std::max(trace(), 0.0);
}

std::size_t CoherenceMatrix::numerical_rank(double rel_tol) const {
  if (m_.size() == 0) {
    return 0;
  }
  const CMatrix herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (top <= 0.0) {
    return 0;
  }
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > rel_tol * top) {
      ++rank;
    }
  }
  return rank;
}

} // namespace beamcb
