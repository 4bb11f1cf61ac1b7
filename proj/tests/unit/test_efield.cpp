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
#include <sstream>

#include "beamcb/efield.hpp"
#include "beamcb/rng.hpp"
#include "support.hpp"

using namespace beamcb;
using beamcb::test::make_grid;

TEST_SUITE("efield") {

TEST_CASE("direction make validates and wraps") {
  CHECK(Direction::make(10.0, 370.0).phi_deg == doctest::Approx(10.0));
  CHECK(Direction::make(10.0, -90.0).phi_deg == doctest::Approx(270.0));
  CHECK_THROWS_AS(Direction::make(-1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Direction::make(181.0, 0.0), InvalidArgument);
}

TEST_CASE("grid rejects inconsistent tensors") {
  CHECK_THROWS_AS(EFieldGrid("a", 1, {0.0, 90.0}, {0.0}, {cplx(1.0)}, {cplx(0.0)}), InvalidArgument);
  CHECK_THROWS_AS(EFieldGrid("a", 1, {90.0, 0.0}, {0.0}, {cplx(1.0), cplx(1.0)}, {cplx(0.0), cplx(0.0)}),
                  InvalidArgument);
  CHECK_THROWS_AS(EFieldGrid("a", 0, {0.0}, {0.0}, {}, {}), InvalidArgument);
}

TEST_CASE("csv round trip is exact") {
  Rng rng(3);
  std::vector<std::vector<cplx>> et(9), ep(9);
  for (int n = 0; n < 9; ++n) {
    et[n] = {rng.complex_normal(), rng.complex_normal()};
    ep[n] = {rng.complex_normal(), rng.complex_normal()};
  }
  const EFieldGrid g = make_grid(2, {0.0, 45.5, 90.0}, {0.0, 120.0, 240.0}, et, ep, "rt");
  std::stringstream ss;
  write_efield_csv(ss, g);
  const EFieldGrid back = read_efield_csv(ss, "rt");
  CHECK(back.theta_axis() == g.theta_axis());
  CHECK(back.phi_axis() == g.phi_axis());
  CHECK(std::equal(back.e_theta_data().begin(), back.e_theta_data().end(), g.e_theta_data().begin()));
  CHECK(std::equal(back.e_phi_data().begin(), back.e_phi_data().end(), g.e_phi_data().begin()));
}

TEST_CASE("csv errors") {
  const std::string header = "elem,theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n";
  SUBCASE("incomplete grid") {
    std::istringstream in(header + "0,0,0,1,0,0,0\n0,0,90,1,0,0,0\n0,90,0,1,0,0,0\n");
    try {
      read_efield_csv(in, "x");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("incomplete grid") != std::string::npos);
    }
  }
  SUBCASE("non-finite sample") {
    std::istringstream in(header + "0,0,0,NaN,0,0,0\n");
    try {
      read_efield_csv(in, "x");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("non-finite sample") != std::string::npos);
    }
  }
  SUBCASE("bad header") {
    std::istringstream in("elem,theta,phi\n");
    CHECK_THROWS_AS(read_efield_csv(in, "x"), ParseError);
  }
  SUBCASE("duplicate row") {
    std::istringstream in(header + "0,0,0,1,0,0,0\n0,0,0,1,0,0,0\n");
    CHECK_THROWS_AS(read_efield_csv(in, "x"), ParseError);
  }
}

TEST_CASE("ula element values") {
  const SyntheticUla ula = generate_ula_efield({2, 0.5, 0.0, std::nullopt});
  const double s = kSyntheticFieldScale;
  SUBCASE("broadside") {
    const MeshIndex idx = ula.grid.locate(Direction::make(90.0, 0.0));
    CHECK(std::abs(ula.grid.e_theta(0, idx) / s - cplx(1.0)) < 1e-12);
    CHECK(std::abs(ula.grid.e_theta(1, idx) / s - cplx(1.0)) < 1e-12);
  }
  SUBCASE("endfire") {
    const MeshIndex idx = ula.grid.locate(Direction::make(0.0, 0.0));
    CHECK(std::abs(ula.grid.e_theta(0, idx) / s - cplx(1.0)) < 1e-12);
    CHECK(std::abs(ula.grid.e_theta(1, idx) / s - cplx(-1.0)) < 1e-12);
    CHECK(std::abs(ula.grid.e_phi(1, idx)) == 0.0);
  }
}

TEST_CASE("ula sampling") {
  const SyntheticUla ula = generate_ula_efield({4, 0.65, 0.0, std::nullopt});
  REQUIRE(ula.directions.size() == 241);
  CHECK(ula.directions[0].theta_deg == 180.0);
  CHECK(ula.directions[240].theta_deg == 0.0);
  CHECK(ula.directions[120].theta_deg == 90.0);
  for (std::size_t i = 1; i < ula.directions.size(); ++i) {
    const double dx = std::cos(deg2rad(ula.directions[i].theta_deg)) - std::cos(deg2rad(ula.directions[i - 1].theta_deg));
    CHECK(dx == doctest::Approx(1.0 / 120.0).epsilon(1e-9));
    CHECK(ula.directions.weights()[i] == doctest::Approx(1.0 / 241.0));
  }
  CHECK_THROWS_AS(generate_ula_efield({0, 0.5, 0.0, std::nullopt}), InvalidArgument);
  CHECK_THROWS_AS(generate_ula_efield({4, -0.5, 0.0, std::nullopt}), InvalidArgument);
}

TEST_CASE("ula pattern exponent") {
  const SyntheticUla ula = generate_ula_efield({1, 0.5, 3.0, std::size_t{4}});
  for (const auto& d : ula.directions.directions()) {
    const double expected = std::sqrt(std::pow(std::sin(deg2rad(d.theta_deg)), 3.0));
    CHECK(std::abs(ula.grid.e_theta(0, ula.grid.locate(d))) / kSyntheticFieldScale ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("fibonacci lattice") {
  const DirectionSet one = fibonacci_directions(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].theta_deg == doctest::Approx(90.0));

  const DirectionSet four = fibonacci_directions(4);
  const double z[] = {0.75, 0.25, -0.25, -0.75};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::cos(deg2rad(four[i].theta_deg)) == doctest::Approx(z[i]).epsilon(1e-12));
  }

  const DirectionSet many = fibonacci_directions(1000);
  double mean = 0.0;
  for (const auto& d : many.directions()) {
    mean += std::cos(deg2rad(d.theta_deg));
    CHECK(d.phi_deg >= 0.0);
    CHECK(d.phi_deg < 360.0);
  }
  CHECK(std::abs(mean / 1000.0) < 1e-9);
  CHECK_THROWS_AS(fibonacci_directions(0), InvalidArgument);
}

TEST_CASE("snap to grid") {
  std::vector<double> theta, phi;
  for (int i = 0; i <= 180; ++i) {
    theta.push_back(i);
  }
  for (int i = 0; i < 360; ++i) {
    phi.push_back(i);
  }
  const std::size_t nodes = theta.size() * phi.size();
  const EFieldGrid g("m", 1, theta, phi, std::vector<cplx>(nodes, 1.0), std::vector<cplx>(nodes, 0.0));
  const DirectionSet in({Direction::make(45.0, 10.0), Direction::make(89.4, 20.0), Direction::make(30.0, 359.7)},
                        {0.5, 0.25, 0.25});
  const DirectionSet out = snap_to_grid(in, g);
  CHECK(out[0] == Direction::make(45.0, 10.0));
  CHECK(out[1].theta_deg == 89.0);
  CHECK(out[2].phi_deg == 0.0);
  CHECK(out.weights() == in.weights());
}

TEST_CASE("coherence matrices") {
  SUBCASE("all ones") {
    const auto m = CoherenceMatrix::from_fields(CVector::Ones(2), CVector::Zero(2));
    CHECK((m.matrix() - CMatrix::Ones(2, 2)).norm() == 0.0);
  }
  SUBCASE("identity") {
    CVector et(2), ep(2);
    et << 1.0, 0.0;
    ep << 0.0, 1.0;
    const auto m = CoherenceMatrix::from_fields(et, ep);
    CHECK((m.matrix() - CMatrix::Identity(2, 2)).norm() == 0.0);
  }
  SUBCASE("synthetic ula is rank one") {
    const SyntheticUla ula = generate_ula_efield({4, 0.65, 1.0, std::nullopt});
    for (std::size_t i = 1; i + 1 < ula.directions.size(); i += 17) {
      CHECK(coherence_matrix(ula.grid, ula.directions[i]).numerical_rank() == 1);
    }
  }
  SUBCASE("off mesh") {
    const SyntheticUla ula = generate_ula_efield({2, 0.5, 0.0, std::nullopt});
    CHECK_THROWS_AS(coherence_matrix(ula.grid, Direction::make(1.0, 0.0)), LookupError);
  }
}

TEST_CASE("coherence sums") {
  const SyntheticUla ula = generate_ula_efield({3, 0.65, 1.0, std::nullopt});
  const Direction d = ula.directions[37];
  CHECK((coherence_sum(ula.grid, std::vector<Direction>{d}).matrix() - coherence_matrix(ula.grid, d).matrix())
            .norm() == 0.0);

  std::vector<std::vector<cplx>> et = {{1.0, 0.0}, {0.0, 1.0}};
  std::vector<std::vector<cplx>> ep = {{0.0, 0.0}, {0.0, 0.0}};
  const EFieldGrid g = make_grid(2, {10.0, 20.0}, {0.0}, et, ep);
  const auto id = coherence_sum(g, std::vector<Direction>{Direction::make(10.0, 0.0), Direction::make(20.0, 0.0)});
  CHECK((id.matrix() - CMatrix::Identity(2, 2)).norm() == 0.0);

  // Independent accumulation straight from the field samples.
  Rng rng(11);
  std::vector<Direction> dirs;
  std::vector<double> scales;
  for (int i = 0; i < 10; ++i) {
    dirs.push_back(ula.directions[static_cast<std::size_t>(rng.uniform() * static_cast<double>(ula.directions.size()))]);
    scales.push_back(rng.uniform());
  }
  const CMatrix fast = coherence_sum(ula.grid, dirs, scales).matrix();
  CMatrix slow = CMatrix::Zero(3, 3);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const MeshIndex idx = ula.grid.locate(dirs[k]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        slow(i, j) += scales[k] * (ula.grid.e_theta(i, idx) * std::conj(ula.grid.e_theta(j, idx)) +
                                   ula.grid.e_phi(i, idx) * std::conj(ula.grid.e_phi(j, idx)));
      }
    }
  }
  CHECK((fast - slow).norm() <= 1e-12 * slow.norm());
}

TEST_CASE("coverage region") {
  CoverageRegion r{0.0, 90.0, 350.0, 10.0};
  CHECK(r.contains(Direction::make(45.0, 355.0)));
  CHECK(r.contains(Direction::make(45.0, 5.0)));
  CHECK_FALSE(r.contains(Direction::make(45.0, 180.0)));
  CHECK_FALSE(r.contains(Direction::make(100.0, 0.0)));
  CHECK(CoverageRegion::full_sphere().is_full_sphere());
  CHECK_THROWS_AS((CoverageRegion{100.0, 90.0, 0.0, 360.0}.validate()), InvalidArgument);
}

TEST_CASE("direction set weights") {
  CHECK_THROWS_AS(DirectionSet({Direction::make(0.0, 0.0)}, {0.5}), InvalidArgument);
  CHECK_THROWS_AS(DirectionSet({Direction::make(0.0, 0.0)}, {}), InvalidArgument);
  const DirectionSet n = DirectionSet::normalized({Direction::make(0.0, 0.0), Direction::make(90.0, 0.0)}, {1.0, 3.0});
  CHECK(n.weights()[1] == doctest::Approx(0.75));
}

TEST_CASE("mesh ula") {
  MeshUlaSpec spec;
  spec.ula = {4, 0.5, 0.0, std::nullopt};
  spec.axis = {1.0, 0.0, 0.0};
  const EFieldGrid g = generate_ula_mesh_efield(spec, "x");
  CHECK(g.num_theta() == 37);
  CHECK(g.num_phi() == 72);
  // Broadside to the x axis: all elements in phase.
  const CVector e = g.theta_vector(g.locate(Direction::make(0.0, 0.0)));
  for (int l = 1; l < 4; ++l) {
    CHECK(std::abs(e[l] - e[0]) < 1e-9);
  }
  const DirectionSet mesh = mesh_directions(g);
  CHECK(mesh.size() == g.num_nodes());
}

} // TEST_SUITE
