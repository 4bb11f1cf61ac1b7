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

#include <doctest.h>

#include <cmath>

#include "beamcb/beamopt.hpp"
#include "beamcb/efield.hpp"
#include "beamcb/oracle.hpp"
#include "beamcb/rng.hpp"

using namespace beamcb;

namespace {

CoherenceMatrix rank_one(const CVector& m) { return CoherenceMatrix(m * m.adjoint()); }

double cophase_gain(const CVector& m) { return std::pow(m.cwiseAbs().sum(), 2) / static_cast<double>(m.size()); }

} // namespace

TEST_SUITE("beamopt") {

TEST_CASE("quantizer") {
  CHECK(quantize_phase(1.0, 2) == doctest::Approx(kPi / 2));
  CHECK(quantize_phase(6.1, 2) == 0.0);
  CHECK(quantize_phase(kPi / 2, 2) == doctest::Approx(kPi / 2));
  // Halfway between 0 and pi/2 rounds down.
  CHECK(quantize_phase(kPi / 4, 2) == 0.0);
  CHECK(quantize_phase(-0.1, 3) == 0.0);
  for (int b = 1; b <= 6; ++b) {
    const double step = kTwoPi / std::pow(2.0, b);
    for (double p = 0.0; p < kTwoPi; p += 0.0137) {
      const double q = quantize_phase(p, b);
      const double k = q / step;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
      CHECK(std::abs(std::remainder(p - q, kTwoPi)) <= step / 2 + 1e-12);
    }
  }
  CHECK_THROWS_AS(PhaseSpec::discrete(0), InvalidArgument);
  CHECK_THROWS_AS(PhaseSpec::discrete(17), InvalidArgument);
}

TEST_CASE("beam weights invariants") {
  const std::vector<double> phases = {0.1, 1.0, 2.0, 3.0};
  const BeamWeights w = BeamWeights::from_phases(phases, PhaseSpec::discrete(3));
  CHECK(w.vector().norm() == doctest::Approx(1.0));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(w.vector()[i]) == doctest::Approx(0.5));
  }
  CVector off = CVector::Constant(4, 0.5);
  off[1] *= std::polar(1.0, 0.1);
  CHECK_THROWS_AS(BeamWeights::from_vector(off, PhaseSpec::discrete(3)), InvalidArgument);
  CHECK_NOTHROW(BeamWeights::from_vector(off, PhaseSpec::continuous()));
  CHECK_THROWS_AS(BeamWeights::from_vector(CVector::Constant(4, 0.4), PhaseSpec::continuous()), InvalidArgument);
}

TEST_CASE("max eigenpair") {
  CMatrix d = CMatrix::Zero(4, 4);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const Eigenpair e1 = max_eigenpair(CoherenceMatrix(d));
  CHECK(e1.value == doctest::Approx(2.0));
  CHECK(std::abs(e1.vector[0] - cplx(1.0)) < 1e-12);

  const Eigenpair e2 = max_eigenpair(rank_one(CVector::Ones(4)));
  CHECK(e2.value == doctest::Approx(4.0));
  CHECK((e2.vector - CVector::Constant(4, 0.5)).norm() < 1e-12);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const CoherenceMatrix m = oracle::random_instance({5, 2, s});
    const Eigenpair e = max_eigenpair(m);
    CHECK((m.matrix() * e.vector - e.value * e.vector).norm() <= 1e-10 * m.matrix().norm());
    CHECK(e.vector.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("sdr on structured instances") {
  SUBCASE("equal magnitude rank one") {
    CVector m(4);
    m << 1.0, cplx(0.0, 1.0), std::polar(1.0, 2.0), std::polar(1.0, -1.0);
    const CoherenceMatrix mm = rank_one(m);
    const SdrSolution s = solve_sdr(mm);
    CHECK(s.objective == doctest::Approx(max_eigenpair(mm).value).epsilon(1e-8));
    CHECK(s.rank == 1);
  }
  SUBCASE("scaled identity") {
    const CoherenceMatrix mm(CMatrix::Identity(5, 5) * 3.0);
    const SdrSolution s = solve_sdr(mm);
    CHECK(s.objective == doctest::Approx(3.0));
  }
  SUBCASE("feasibility") {
    const CoherenceMatrix mm = oracle::random_instance({6, 2, 9});
    const SdrSolution s = solve_sdr(mm);
    for (int i = 0; i < 6; ++i) {
      CHECK(s.w(i, i).real() == doctest::Approx(1.0 / 6.0));
    }
    CHECK((s.w - s.w.adjoint()).norm() < 1e-12);
    CHECK(s.duality_gap <= 1e-9 * mm.trace());
  }
  SUBCASE("non-convergence carries the best iterate") {
    const CoherenceMatrix mm = oracle::random_instance({8, 2, 4});
    SdrOptions opts;
    opts.tol = 1e-300;
    opts.max_sweeps = 2;
    try {
      solve_sdr(mm, opts);
      FAIL("expected SdrNotConverged");
    } catch (const SdrNotConverged& e) {
      CHECK(e.best().sweeps == 2);
      CHECK(e.gap() >= 0.0);
    }
  }
}

TEST_CASE("sdr dominates the discrete optimum") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CoherenceMatrix m = oracle::random_instance({4, 2, 100 + s});
    const double sdp = solve_sdr(m).objective;
    const double b3 = oracle::brute_force_b3(m, 5).gain;
    CHECK(sdp >= b3 * (1.0 - 1e-9));
    CHECK(sdp <= max_eigenpair(m).value * (1.0 + 1e-9));
  }
}

TEST_CASE("gaussian randomization") {
  SUBCASE("rank one continuous attains co-phasing") {
    CVector m(4);
    m << 1.0, cplx(0.0, 2.0), std::polar(0.5, 2.0), std::polar(1.5, -1.0);
    const CoherenceMatrix mm = rank_one(m);
    const BeamWeights w = gaussian_randomization(solve_sdr(mm), mm, 100, PhaseSpec::continuous(), 1);
    CHECK(w.gain(mm) == doctest::Approx(cophase_gain(m)).epsilon(1e-9));
  }
  SUBCASE("lattice aligned discrete") {
    CVector m(4);
    m << 1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0);
    const CoherenceMatrix mm = rank_one(m);
    const BeamWeights w = gaussian_randomization(solve_sdr(mm), mm, 1000, PhaseSpec::discrete(2), 1);
    CHECK(w.gain(mm) == doctest::Approx(4.0));
  }
  SUBCASE("seeded draws are reproducible") {
    const CoherenceMatrix mm = oracle::random_instance({6, 2, 5});
    const SdrSolution s = solve_sdr(mm);
    CHECK(gaussian_randomization(s, mm, 50, PhaseSpec::discrete(3), 77) ==
          gaussian_randomization(s, mm, 50, PhaseSpec::discrete(3), 77));
  }
}

TEST_CASE("coordinate descent") {
  SUBCASE("rank one from eigen init") {
    CVector m(5);
    m << 1.0, cplx(0.3, 2.0), std::polar(0.5, 2.0), std::polar(1.5, -1.0), std::polar(0.1, 3.0);
    const CoherenceMatrix mm = rank_one(m);
    const BeamWeights init = design_beam(mm, PhaseSpec::continuous(), BeamStrategy::eigen, 0);
    const DescentResult r = coordinate_descent(mm, init, PhaseSpec::continuous());
    CHECK(r.weights.gain(mm) == doctest::Approx(cophase_gain(m)).epsilon(1e-12));
  }
  SUBCASE("fixed point") {
    const CoherenceMatrix mm = rank_one(CVector::Ones(4));
    const BeamWeights w = BeamWeights::from_phases(std::vector<double>(4, 0.0), PhaseSpec::discrete(2));
    const DescentResult r = coordinate_descent(mm, w, PhaseSpec::discrete(2));
    CHECK(r.weights == w);
    CHECK(r.sweeps == 1);
  }
  SUBCASE("bounded and monotone") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const CoherenceMatrix mm = oracle::random_instance({6, 2, 200 + s});
      const BeamWeights init = design_beam(mm, PhaseSpec::discrete(3), BeamStrategy::eigen, 0);
      const DescentResult r = coordinate_descent(mm, init, PhaseSpec::discrete(3));
      CHECK(r.objectives.front() == doctest::Approx(init.gain(mm)));
      for (std::size_t k = 1; k < r.objectives.size(); ++k) {
        CHECK(r.objectives[k] >= r.objectives[k - 1] - 1e-12 * mm.trace());
      }
      CHECK(r.weights.gain(mm) <= max_eigenpair(mm).value * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("design strategies") {
  SUBCASE("broadside ula beam") {
    const SyntheticUla ula = generate_ula_efield({4, 0.5, 0.0, std::nullopt});
    const CoherenceMatrix m = coherence_matrix(ula.grid, Direction::make(90.0, 0.0));
    for (auto st : {BeamStrategy::eigen, BeamStrategy::sdr_grp, BeamStrategy::sdr_grp_cd}) {
      const BeamWeights w = design_beam(m, PhaseSpec::discrete(5), st, 3);
      CHECK(kGainFactor * w.gain(m) == doctest::Approx(4.0));
    }
  }
  SUBCASE("refinement never loses to the eigen beam") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const CoherenceMatrix m = oracle::random_instance({4, 2, 300 + s});
      const double eig = design_beam(m, PhaseSpec::discrete(2), BeamStrategy::eigen, s).gain(m);
      const double cd = design_beam(m, PhaseSpec::discrete(2), BeamStrategy::sdr_grp_cd, s).gain(m);
      CHECK(cd >= eig - 1e-12 * m.trace());
    }
  }
  SUBCASE("strategy names") {
    CHECK(parse_strategy("sdr_grp_cd") == BeamStrategy::sdr_grp_cd);
    CHECK(to_string(BeamStrategy::eigen) == "eigen");
    CHECK_THROWS_AS(parse_strategy("nope"), InvalidArgument);
  }
}

TEST_CASE("rng") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(1);
  double s = 0.0, s2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = c.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.05);
  CHECK(std::abs(s2 / n - 1.0) < 0.05);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

} // TEST_SUITE
