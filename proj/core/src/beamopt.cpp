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

#include "beamcb/beamopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "beamcb/rng.hpp"

namespace beamcb {

PhaseSpec PhaseSpec::discrete(int bits) {
  if (bits < 1 || bits > kMaxBits) {
    throw InvalidArgument("phase bits must be in [1, 16], got " + std::to_string(bits));
  }
  return PhaseSpec(bits);
}

double PhaseSpec::apply(double phase) const {
  return is_discrete() ? quantize_phase(phase, bits_) : wrap_phase(phase);
}

double quantize_phase(double phase, int bits) {
  if (bits < 1 || bits > PhaseSpec::kMaxBits) {
    throw InvalidArgument("phase bits must be in [1, 16], got " + std::to_string(bits));
  }
  const auto levels = static_cast<long long>(1) << bits;
  const double step = kTwoPi / static_cast<double>(levels);
  const double p = wrap_phase(phase);
  // ceil(x - 1/2) rounds half-way cases toward the lower lattice point.
  auto k = static_cast<long long>(std::ceil(p / step - 0.5));
  k %= levels;
  return static_cast<double>(k) * step;
}

namespace {

double lattice_distance(double phase, double step) {
  const double k = std::round(phase / step);
  return std::fabs(phase - k * step);
}

} // namespace

BeamWeights BeamWeights::from_phases(std::span<const double> phases, PhaseSpec spec) {
  if (phases.empty()) {
    throw InvalidArgument("beam needs at least one element");
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(phases.size()));
  CVector w(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t i = 0; i < phases.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = std::polar(amp, spec.apply(phases[i]));
  }
  return BeamWeights(std::move(w), spec);
}

BeamWeights BeamWeights::cophase(const CVector& v, PhaseSpec spec) {
  std::vector<double> phases(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    phases[static_cast<std::size_t>(i)] = v[i] == cplx{0.0, 0.0} ? 0.0 : std::arg(v[i]);
  }
  return from_phases(phases, spec);
}

BeamWeights BeamWeights::from_vector(const CVector& w, PhaseSpec spec) {
  if (w.size() == 0) {
    throw InvalidArgument("beam needs at least one element");
  }
  if (std::fabs(w.squaredNorm() - 1.0) > 1e-10) {
    throw InvalidArgument("beam weights must have unit norm");
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::fabs(std::abs(w[i]) - amp) > 1e-10) {
      throw InvalidArgument("beam weights must all have magnitude 1/sqrt(L)");
    }
    if (spec.is_discrete() && lattice_distance(wrap_phase(std::arg(w[i])), spec.step()) > 1e-9) {
      std::ostringstream os;
      os << "phase of element " << i << " is not on the " << spec.bits() << "-bit lattice";
      throw InvalidArgument(os.str());
    }
  }
  return BeamWeights(w, spec);
}

std::vector<double> BeamWeights::phases() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = spec_.apply(std::arg(w_[static_cast<Eigen::Index>(i)]));
  }
  return out;
}

bool BeamWeights::operator==(const BeamWeights& other) const {
  return spec_ == other.spec_ && w_.size() == other.w_.size() && w_ == other.w_;
}

Eigenpair max_eigenpair(const CoherenceMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) {
    throw InvalidArgument("empty coherence matrix");
  }
  if (m.matrix().cwiseAbs().maxCoeff() == 0.0) {
    return {0.0, CVector::Unit(n, 0)};
  }
  const CMatrix herm = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  // Eigenvalues come sorted ascending.
  const double lambda = es.eigenvalues()[n - 1];
  CVector v = es.eigenvectors().col(n - 1);
  v.normalize();
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12 * vmax) {
      v *= std::conj(v[i]) / a;
      v[i] = cplx{a, 0.0};
      break;
    }
  }
  return {lambda, v};
}

SdrNotConverged::SdrNotConverged(SdrSolution best, double gap)
    : Error([&] {
        std::ostringstream os;
        os << "SDR did not converge in " << best.sweeps << " sweeps (duality gap " << gap << ")";
        return os.str();
      }()),
      best_(std::move(best)),
      gap_(gap) {}

namespace {

struct DualCheck {
  double objective; // tr(MX) / L
  double gap;       // certified (optimum - objective), W scale
};

DualCheck certify(const CMatrix& m, const CMatrix& v) {
  const auto n = m.rows();
  const CMatrix x = v * v.adjoint();
  const CMatrix mx = m * x;
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = mx(i, i).real();
  }
  CMatrix s = -0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i, i) += y[i];
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
  const double mu = es.eigenvalues()[0];
  const double l = static_cast<double>(n);
  return {y.sum() / l, std::max(0.0, -mu)};
}

SdrSolution finish(const CMatrix& v, const DualCheck& check, int sweeps, double rank_tol) {
  const auto n = v.rows();
  SdrSolution sol;
  sol.w = (v * v.adjoint()) / static_cast<double>(n);
  sol.objective = check.objective;
  sol.duality_gap = check.gap;
  sol.sweeps = sweeps;
  sol.rank = CoherenceMatrix(sol.w).numerical_rank(rank_tol);
  return sol;
}

} // namespace

SdrSolution solve_sdr(const CoherenceMatrix& m, double tol) {
  SdrOptions opts;
  opts.tol = tol;
  return solve_sdr(m, opts);
}

SdrSolution solve_sdr(const CoherenceMatrix& m, const SdrOptions& options) {
  if (!(options.tol > 0.0)) {
    throw InvalidArgument("SDR tolerance must be positive");
  }
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) {
    throw InvalidArgument("empty coherence matrix");
  }
  const CMatrix& mat = m.matrix();
  const double threshold = options.tol * std::max(m.trace(), 0.0);

  // Rows of V are unit vectors in C^n; X = V V^H has unit diagonal.
  CMatrix v(n, n);
  Rng rng(0x5d5eed5d5eedULL);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = rng.complex_normal();
    }
    v.row(i).normalize();
  }

  DualCheck check = certify(mat, v);
  if (check.gap <= threshold) {
    return finish(v, check, 0, options.rank_tol);
  }
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::RowVectorXcd g = mat.row(i) * v - mat(i, i) * v.row(i);
      const double norm = g.norm();
      if (norm > 0.0) {
        v.row(i) = g / norm;
      }
    }
    check = certify(mat, v);
    if (check.gap <= threshold) {
      return finish(v, check, sweep, options.rank_tol);
    }
  }
  SdrSolution best = finish(v, check, options.max_sweeps, options.rank_tol);
  throw SdrNotConverged(std::move(best), check.gap);
}

BeamWeights gaussian_randomization(const SdrSolution& sdr, const CoherenceMatrix& m, int n_rand,
                                   PhaseSpec spec, std::uint64_t seed) {
  if (n_rand < 1) {
    throw InvalidArgument("number of randomizations must be >= 1");
  }
  const auto n = sdr.w.rows();
  if (n == 0 || static_cast<std::size_t>(n) != m.size()) {
    throw InvalidArgument("SDR solution and coherence matrix sizes differ");
  }
  const CMatrix herm = 0.5 * (sdr.w + sdr.w.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (!spec.is_discrete() && sdr.rank <= 1) {
    return BeamWeights::cophase(es.eigenvectors().col(n - 1), spec);
  }
  CMatrix factor = es.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    factor.col(k) *= std::sqrt(std::max(es.eigenvalues()[k], 0.0));
  }

  Rng rng(seed);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  CVector xi(n);
  CVector cand(n);
  CVector best;
  double best_gain = -std::numeric_limits<double>::infinity();
  for (int draw = 0; draw < n_rand; ++draw) {
    for (Eigen::Index k = 0; k < n; ++k) {
      xi[k] = rng.complex_normal();
    }
    const CVector sample = factor * xi;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double phase = sample[k] == cplx{0.0, 0.0} ? 0.0 : std::arg(sample[k]);
      cand[k] = std::polar(amp, spec.apply(phase));
    }
    const double g = m.quadratic_form(cand);
    if (g > best_gain) {
      best_gain = g;
      best = cand;
    }
  }
  return BeamWeights::cophase(best, spec);
}

DescentResult coordinate_descent(const CoherenceMatrix& m, const BeamWeights& init, PhaseSpec spec) {
  const auto n = static_cast<Eigen::Index>(init.size());
  if (static_cast<std::size_t>(n) != m.size()) {
    throw InvalidArgument("initial beam and coherence matrix sizes differ");
  }
  // Re-validates the start point against the requested lattice.
  CVector w = BeamWeights::from_vector(init.vector(), spec).vector();
  const CMatrix& mat = m.matrix();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const double stop = 1e-12 * std::max(m.trace(), 0.0);
  const int cap = spec.is_discrete() ? static_cast<int>(10 * n * static_cast<Eigen::Index>(spec.levels())) : 1000;

  DescentResult result{BeamWeights::cophase(w, spec), {}, 0};
  double prev = m.quadratic_form(w);
  result.objectives.push_back(prev);
  for (int sweep = 1; sweep <= cap; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx s = (mat.row(i) * w).value() - mat(i, i) * w[i];
      if (s == cplx{0.0, 0.0}) {
        continue;
      }
      w[i] = std::polar(amp, spec.apply(std::arg(s)));
    }
    const double obj = m.quadratic_form(w);
    result.objectives.push_back(obj);
    result.sweeps = sweep;
    const bool done = obj - prev < stop;
    prev = obj;
    if (done) {
      break;
    }
  }
  result.weights = BeamWeights::cophase(w, spec);
  return result;
}

std::string_view to_string(BeamStrategy s) {
  switch (s) {
  case BeamStrategy::eigen:
    return "eigen";
  case BeamStrategy::sdr_grp:
    return "sdr_grp";
  case BeamStrategy::sdr_grp_cd:
    return "sdr_grp_cd";
  }
  return "unknown";
}

BeamStrategy parse_strategy(std::string_view name) {
  if (name == "eigen") {
    return BeamStrategy::eigen;
  }
  if (name == "sdr_grp") {
    return BeamStrategy::sdr_grp;
  }
  if (name == "sdr_grp_cd") {
    return BeamStrategy::sdr_grp_cd;
  }
  throw InvalidArgument("unknown beam strategy '" + std::string(name) + "'");
}

BeamWeights design_beam(const CoherenceMatrix& m, PhaseSpec spec, BeamStrategy strategy, std::uint64_t seed,
                        const DesignOptions& options) {
  BeamWeights eigen_beam = BeamWeights::cophase(max_eigenpair(m).vector, spec);
  if (strategy == BeamStrategy::eigen) {
    return eigen_beam;
  }
  const SdrSolution sdr = solve_sdr(m, options.sdr);
  BeamWeights beam = gaussian_randomization(sdr, m, options.n_rand, spec, seed);
  // The quantized eigenvector joins the randomized pool as one more candidate.
  if (eigen_beam.gain(m) > beam.gain(m)) {
    beam = eigen_beam;
  }
  if (strategy == BeamStrategy::sdr_grp) {
    return beam;
  }
  return coordinate_descent(m, beam, spec).weights;
}

} // namespace beamcb
