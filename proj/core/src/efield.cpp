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

#include "beamcb/efield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace beamcb {

namespace {

constexpr double kMeshTolDeg = 1e-9;

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

double wrap_deg(double phi) {
  double p = std::fmod(phi, 360.0);
  if (p < 0.0) {
    p += 360.0;
  }
  if (p >= 360.0) {
    p = 0.0;
  }
  return p;
}

double circular_deg(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 360.0 - d);
}

} // namespace

Direction Direction::make(double theta_deg, double phi_deg) {
  if (!std::isfinite(theta_deg) || !std::isfinite(phi_deg)) {
    throw InvalidArgument("direction angles must be finite");
  }
  if (theta_deg < 0.0 || theta_deg > 180.0) {
    std::ostringstream os;
    os << "theta " << theta_deg << " outside [0, 180]";
    throw InvalidArgument(os.str());
  }
  return Direction{theta_deg, wrap_deg(phi_deg)};
}

EFieldGrid::EFieldGrid(std::string array_id, std::size_t num_elements, std::vector<double> theta_axis,
                       std::vector<double> phi_axis, std::vector<cplx> e_theta, std::vector<cplx> e_phi)
    : array_id_(std::move(array_id)),
      num_elements_(num_elements),
      theta_axis_(std::move(theta_axis)),
      phi_axis_(std::move(phi_axis)),
      e_theta_(std::move(e_theta)),
      e_phi_(std::move(e_phi)) {
  if (num_elements_ == 0) {
    throw InvalidArgument("grid needs at least one element");
  }
  if (theta_axis_.empty() || phi_axis_.empty()) {
    throw InvalidArgument("grid axes must be non-empty");
  }
  if (!strictly_increasing(theta_axis_) || !strictly_increasing(phi_axis_)) {
    throw InvalidArgument("grid axes must be strictly increasing");
  }
  if (theta_axis_.front() < 0.0 || theta_axis_.back() > 180.0) {
    throw InvalidArgument("theta axis must lie in [0, 180]");
  }
  if (phi_axis_.front() < 0.0 || phi_axis_.back() >= 360.0) {
    throw InvalidArgument("phi axis must lie in [0, 360)");
  }
  const std::size_t expected = num_elements_ * num_nodes();
  if (e_theta_.size() != expected || e_phi_.size() != expected) {
    throw InvalidArgument("field tensor shape does not match L x theta x phi");
  }
  auto finite = [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!std::all_of(e_theta_.begin(), e_theta_.end(), finite) ||
      !std::all_of(e_phi_.begin(), e_phi_.end(), finite)) {
    throw InvalidArgument("non-finite sample");
  }
}

CVector EFieldGrid::theta_vector(MeshIndex idx) const {
  CVector v(static_cast<Eigen::Index>(num_elements_));
  for (std::size_t l = 0; l < num_elements_; ++l) {
    v[static_cast<Eigen::Index>(l)] = e_theta_[offset(l, idx)];
  }
  return v;
}

CVector EFieldGrid::phi_vector(MeshIndex idx) const {
  CVector v(static_cast<Eigen::Index>(num_elements_));
  for (std::size_t l = 0; l < num_elements_; ++l) {
    v[static_cast<Eigen::Index>(l)] = e_phi_[offset(l, idx)];
  }
  return v;
}

Direction EFieldGrid::direction_at(MeshIndex idx) const {
  return Direction{theta_axis_.at(idx.theta), phi_axis_.at(idx.phi)};
}

std::optional<MeshIndex> EFieldGrid::find(const Direction& dir) const {
  const MeshIndex idx = nearest(dir);
  if (std::fabs(theta_axis_[idx.theta] - dir.theta_deg) > kMeshTolDeg) {
    return std::nullopt;
  }
  if (circular_deg(phi_axis_[idx.phi], wrap_deg(dir.phi_deg)) > kMeshTolDeg) {
    return std::nullopt;
  }
  return idx;
}

MeshIndex EFieldGrid::locate(const Direction& dir) const {
  if (auto idx = find(dir)) {
    return *idx;
  }
  std::ostringstream os;
  os.precision(17);
  os << "direction (theta=" << dir.theta_deg << ", phi=" << dir.phi_deg
     << ") is not a mesh node of array '" << array_id_ << "'";
  throw LookupError(os.str());
}

MeshIndex EFieldGrid::nearest(const Direction& dir) const {
  MeshIndex idx;
  // theta: binary search then compare the two neighbours; lower wins ties.
  auto it = std::lower_bound(theta_axis_.begin(), theta_axis_.end(), dir.theta_deg);
  if (it == theta_axis_.end()) {
    idx.theta = theta_axis_.size() - 1;
  } else if (it == theta_axis_.begin()) {
    idx.theta = 0;
  } else {
    const auto hi = static_cast<std::size_t>(it - theta_axis_.begin());
    const double d_lo = dir.theta_deg - theta_axis_[hi - 1];
    const double d_hi = theta_axis_[hi] - dir.theta_deg;
    idx.theta = d_hi < d_lo ? hi : hi - 1;
  }
  const double phi = wrap_deg(dir.phi_deg);
  double best = circular_deg(phi_axis_[0], phi);
  for (std::size_t p = 1; p < phi_axis_.size(); ++p) {
    const double d = circular_deg(phi_axis_[p], phi);
    if (d < best) {
      best = d;
      idx.phi = p;
    }
  }
  return idx;
}

bool EFieldGrid::same_mesh(const EFieldGrid& other) const {
  return theta_axis_ == other.theta_axis_ && phi_axis_ == other.phi_axis_;
}

DirectionSet::DirectionSet(std::vector<Direction> directions, std::vector<double> weights)
    : directions_(std::move(directions)), weights_(std::move(weights)) {
  if (directions_.size() != weights_.size()) {
    throw InvalidArgument("direction and weight counts differ");
  }
  if (directions_.empty()) {
    return;
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("direction weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "direction weights sum to " << sum << ", expected 1";
    throw InvalidArgument(os.str());
  }
}

DirectionSet DirectionSet::uniform(std::vector<Direction> directions) {
  const std::size_t n = directions.size();
  std::vector<double> w(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return DirectionSet(std::move(directions), std::move(w));
}

DirectionSet DirectionSet::normalized(std::vector<Direction> directions, std::vector<double> raw_weights) {
  double sum = 0.0;
  for (double w : raw_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("direction weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw InvalidArgument("direction weights sum to zero");
  }
  for (double& w : raw_weights) {
    w /= sum;
  }
  return DirectionSet(std::move(directions), std::move(raw_weights));
}

void CoverageRegion::validate() const {
  if (!(theta_lo >= 0.0 && theta_hi <= 180.0 && theta_lo <= theta_hi)) {
    throw InvalidArgument("coverage region needs 0 <= theta_lo <= theta_hi <= 180");
  }
  if (!(phi_lo >= 0.0 && phi_lo <= 360.0 && phi_hi >= 0.0 && phi_hi <= 360.0)) {
    throw InvalidArgument("coverage region phi bounds must lie in [0, 360]");
  }
}

bool CoverageRegion::contains(const Direction& dir) const {
  if (dir.theta_deg < theta_lo || dir.theta_deg > theta_hi) {
    return false;
  }
  const double phi = wrap_deg(dir.phi_deg);
  if (phi_lo <= phi_hi) {
    if (phi_hi >= 360.0 && phi_lo <= 0.0) {
      return true;
    }
    // phi_hi == 360 also admits phi == 0 through the wrap.
    return (phi >= phi_lo && phi <= phi_hi) || (phi_hi >= 360.0 && phi == 0.0);
  }
  return phi >= phi_lo || phi <= phi_hi;
}

bool CoverageRegion::is_full_sphere() const {
  return theta_lo <= 0.0 && theta_hi >= 180.0 && phi_lo <= 0.0 && phi_hi >= 360.0;
}

void SyntheticUlaSpec::validate() const {
  if (num_elements < 1) {
    throw InvalidArgument("ULA needs at least one element");
  }
  if (!(spacing_over_lambda > 0.0) || !std::isfinite(spacing_over_lambda)) {
    throw InvalidArgument("element spacing d/lambda must be positive");
  }
  if (!(pattern_q >= 0.0) || !std::isfinite(pattern_q)) {
    throw InvalidArgument("element pattern exponent q must be >= 0");
  }
  if (sampling_factor && *sampling_factor < 1) {
    throw InvalidArgument("sampling factor must be >= 1");
  }
}

namespace {

// sqrt(sin^q(theta)); q = 0 is isotropic even at the poles.
double element_amplitude(double sin_theta, double q) {
  if (q == 0.0) {
    return 1.0;
  }
  return std::sqrt(std::pow(std::max(sin_theta, 0.0), q));
}

} // namespace

SyntheticUla generate_ula_efield(const SyntheticUlaSpec& spec, std::string array_id) {
  spec.validate();
  const std::size_t a = spec.effective_sampling_factor();
  const std::size_t n = 2 * a + 1;
  const std::size_t L = spec.num_elements;

  // x_i = -1 + i/a, i = 0..2a; theta descends from 180 to 0 as x rises.
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = -1.0 + static_cast<double>(i) / static_cast<double>(a);
  }
  xs.front() = -1.0;
  xs.back() = 1.0;
  xs[a] = 0.0;

  std::vector<double> thetas(n);
  for (std::size_t i = 0; i < n; ++i) {
    thetas[i] = rad2deg(std::acos(xs[i]));
  }
  std::vector<double> theta_axis(thetas.rbegin(), thetas.rend());

  std::vector<cplx> e_theta(L * n);
  std::vector<cplx> e_phi(L * n, cplx{0.0, 0.0});
  for (std::size_t t = 0; t < n; ++t) {
    // theta_axis[t] corresponds to x = xs[n - 1 - t]
    const double x = xs[n - 1 - t];
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - x * x));
    const double amp = element_amplitude(sin_theta, spec.pattern_q) * kSyntheticFieldScale;
    for (std::size_t l = 0; l < L; ++l) {
      const double phase = kTwoPi * spec.spacing_over_lambda * x * static_cast<double>(l);
      e_theta[l * n + t] = std::polar(amp, phase);
    }
  }

  EFieldGrid grid(std::move(array_id), L, std::move(theta_axis), std::vector<double>{0.0},
                  std::move(e_theta), std::move(e_phi));

  std::vector<Direction> dirs(n);
  for (std::size_t i = 0; i < n; ++i) {
    dirs[i] = Direction{thetas[i], 0.0};
  }
  return SyntheticUla{std::move(grid), DirectionSet::uniform(std::move(dirs))};
}

EFieldGrid generate_ula_mesh_efield(const MeshUlaSpec& spec, std::string array_id) {
  spec.ula.validate();
  if (!(spec.theta_step_deg > 0.0) || !(spec.phi_step_deg > 0.0)) {
    throw InvalidArgument("mesh steps must be positive");
  }
  const double norm = std::sqrt(spec.axis[0] * spec.axis[0] + spec.axis[1] * spec.axis[1] +
                                spec.axis[2] * spec.axis[2]);
  if (!(norm > 0.0)) {
    throw InvalidArgument("array axis must be nonzero");
  }
  const double ax = spec.axis[0] / norm;
  const double ay = spec.axis[1] / norm;
  const double az = spec.axis[2] / norm;

  std::vector<double> theta_axis;
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * spec.theta_step_deg;
    if (t > 180.0 + 1e-9) {
      break;
    }
    theta_axis.push_back(std::min(t, 180.0));
  }
  std::vector<double> phi_axis;
  for (std::size_t i = 0;; ++i) {
    const double p = static_cast<double>(i) * spec.phi_step_deg;
    if (p >= 360.0 - 1e-9) {
      break;
    }
    phi_axis.push_back(p);
  }

  const std::size_t L = spec.ula.num_elements;
  const std::size_t T = theta_axis.size();
  const std::size_t P = phi_axis.size();
  std::vector<cplx> e_theta(L * T * P);
  std::vector<cplx> e_phi(L * T * P, cplx{0.0, 0.0});
  for (std::size_t t = 0; t < T; ++t) {
    const double th = deg2rad(theta_axis[t]);
    for (std::size_t p = 0; p < P; ++p) {
      const double ph = deg2rad(phi_axis[p]);
      const double c = std::clamp(std::sin(th) * std::cos(ph) * ax + std::sin(th) * std::sin(ph) * ay +
                                      std::cos(th) * az,
                                  -1.0, 1.0);
      const double amp =
          element_amplitude(std::sqrt(std::max(0.0, 1.0 - c * c)), spec.ula.pattern_q) * kSyntheticFieldScale;
      for (std::size_t l = 0; l < L; ++l) {
        const double phase = kTwoPi * spec.ula.spacing_over_lambda * c * static_cast<double>(l);
        e_theta[(l * T + t) * P + p] = std::polar(amp, phase);
      }
    }
  }
  return EFieldGrid(std::move(array_id), L, std::move(theta_axis), std::move(phi_axis), std::move(e_theta),
                    std::move(e_phi));
}

DirectionSet fibonacci_directions(std::size_t count) {
  if (count < 1) {
    throw InvalidArgument("Fibonacci lattice needs at least one point");
  }
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double n = static_cast<double>(count);
  std::vector<Direction> dirs(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / n;
    const double theta = rad2deg(std::acos(std::clamp(z, -1.0, 1.0)));
    const double phi = wrap_deg(360.0 * static_cast<double>(i) / golden);
    dirs[i] = Direction{theta, phi};
  }
  return DirectionSet::uniform(std::move(dirs));
}

DirectionSet mesh_directions(const EFieldGrid& grid) {
  std::vector<Direction> dirs;
  std::vector<double> w;
  dirs.reserve(grid.num_nodes());
  w.reserve(grid.num_nodes());
  double total = 0.0;
  for (std::size_t t = 0; t < grid.num_theta(); ++t) {
    const double s = std::max(0.0, std::sin(deg2rad(grid.theta_axis()[t])));
    for (std::size_t p = 0; p < grid.num_phi(); ++p) {
      dirs.push_back(grid.direction_at({t, p}));
      w.push_back(s);
      total += s;
    }
  }
  if (!(total > 0.0)) {
    return DirectionSet::uniform(std::move(dirs));
  }
  return DirectionSet::normalized(std::move(dirs), std::move(w));
}

DirectionSet mesh_directions_uniform(const EFieldGrid& grid) {
  std::vector<Direction> dirs;
  dirs.reserve(grid.num_nodes());
  for (std::size_t t = 0; t < grid.num_theta(); ++t) {
    for (std::size_t p = 0; p < grid.num_phi(); ++p) {
      dirs.push_back(grid.direction_at({t, p}));
    }
  }
  return DirectionSet::uniform(std::move(dirs));
}

DirectionSet snap_to_grid(const DirectionSet& set, const EFieldGrid& grid) {
  std::vector<Direction> dirs;
  dirs.reserve(set.size());
  for (const auto& d : set.directions()) {
    dirs.push_back(grid.direction_at(grid.nearest(d)));
  }
  return DirectionSet(std::move(dirs), set.weights());
}

CoherenceMatrix coherence_matrix(const EFieldGrid& grid, MeshIndex idx) {
  return CoherenceMatrix::from_fields(grid.theta_vector(idx), grid.phi_vector(idx));
}

CoherenceMatrix coherence_matrix(const EFieldGrid& grid, const Direction& dir) {
  return coherence_matrix(grid, grid.locate(dir));
}

CoherenceMatrix coherence_sum(const EFieldGrid& grid, std::span<const Direction> dirs) {
  CoherenceMatrix sum = CoherenceMatrix::zero(grid.num_elements());
  for (const auto& d : dirs) {
    sum += coherence_matrix(grid, d);
  }
  return sum;
}

CoherenceMatrix coherence_sum(const EFieldGrid& grid, std::span<const Direction> dirs,
                              std::span<const double> scales) {
  if (dirs.size() != scales.size()) {
    throw InvalidArgument("direction and scale counts differ");
  }
  CoherenceMatrix sum = CoherenceMatrix::zero(grid.num_elements());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    sum.add_scaled(coherence_matrix(grid, dirs[i]), scales[i]);
  }
  return sum;
}

} // namespace beamcb
