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

#include <algorithm>

#include "beamcb/rng.hpp"
#include "beamcb/synthesis.hpp"
#include "support.hpp"

using namespace beamcb;

TEST_SUITE("metrics") {

TEST_CASE("isotropic element") {
  const std::vector<EFieldGrid> grids{test::isotropic_mesh()};
  const DirectionSet dirs = mesh_directions(grids[0]);
  const BeamWeights w = BeamWeights::from_phases(std::vector<double>{0.0}, PhaseSpec::continuous());
  for (const auto& d : dirs.directions()) {
    CHECK(beam_gain(grids[0], w, d) == doctest::Approx(1.0));
  }
  for (double g : upper_bound_pattern(grids, dirs).gains_db) {
    CHECK(std::abs(g) < 1e-12);
  }
}

TEST_CASE("coherent combining") {
  const SyntheticUla ula = generate_ula_efield({4, 0.5, 0.0, std::nullopt});
  const BeamWeights w = BeamWeights::from_phases(std::vector<double>(4, 0.0), PhaseSpec::discrete(5));
  CHECK(beam_gain(ula.grid, w, Direction::make(90.0, 0.0)) == doctest::Approx(4.0));
}

TEST_CASE("composite pattern") {
  const SyntheticUla ula = generate_ula_efield({4, 0.65, 0.0, std::nullopt});
  const std::vector<EFieldGrid> grids{ula.grid};
  const Codebook bm = benchmark_codebook(4, 0.65, 4, PhaseSpec::discrete(5), "ula");

  Codebook single;
  single.entries.push_back(bm.entries[1]);
  const GainPattern one = composite_pattern(grids, single, ula.directions);
  const GainPattern beam = beam_pattern(ula.grid, bm.entries[1].weights, ula.directions);
  CHECK(one.gains_db == beam.gains_db);

  Codebook grown;
  std::vector<double> prev(ula.directions.size(), kDbFloor);
  for (const auto& e : bm.entries) {
    grown.entries.push_back(e);
    const GainPattern p = composite_pattern(grids, grown, ula.directions);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      CHECK(p.gains_db[i] >= prev[i]);
    }
    prev = p.gains_db;
  }

  const CoherenceCache cache(grids, ula.directions);
  CHECK(composite_pattern(cache, bm).gains_db == composite_pattern(grids, bm, ula.directions).gains_db);
  Codebook stray;
  stray.entries.push_back({"missing", bm.entries[0].weights});
  CHECK_THROWS_AS(composite_pattern(grids, stray, ula.directions), InvalidArgument);
}

TEST_CASE("coverage statistics") {
  SUBCASE("constant pattern") {
    const DirectionSet d = fibonacci_directions(10);
    const GainPattern p{d, std::vector<double>(10, 3.0), "c"};
    const CoverageStats s = coverage_stats(p, std::vector<double>{5.0, 50.0, 95.0});
    CHECK(s.mean_db == doctest::Approx(3.0));
    for (const auto& [x, v] : s.percentiles) {
      CHECK(v == doctest::Approx(3.0));
    }
    REQUIRE(s.cdf.size() == 1);
    CHECK(s.cdf[0].second == 1.0);
  }
  SUBCASE("two samples") {
    const DirectionSet d = fibonacci_directions(2);
    const GainPattern p{d, {to_db(1.0), to_db(3.0)}, "t"};
    const CoverageStats s = coverage_stats(p, std::vector<double>{50.0});
    CHECK(s.mean_db == doctest::Approx(to_db(2.0)));
    CHECK(s.mean_db == doctest::Approx(3.0103).epsilon(1e-4));
    CHECK(s.percentiles.at(50.0) == doctest::Approx(0.0));
  }
  SUBCASE("weighted percentile") {
    const DirectionSet d({Direction::make(0, 0), Direction::make(90, 0), Direction::make(180, 0)}, {0.2, 0.3, 0.5});
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(weighted_percentile(d, v, 20.0) == 1.0);
    CHECK(weighted_percentile(d, v, 21.0) == 2.0);
    CHECK(weighted_percentile(d, v, 50.0) == 2.0);
    CHECK(weighted_percentile(d, v, 51.0) == 3.0);
  }
}

TEST_CASE("bound and gap") {
  const SyntheticUla ula = generate_ula_efield({4, 0.65, 0.0, std::nullopt});
  const std::vector<EFieldGrid> grids{ula.grid};
  const CoherenceCache cache(grids, ula.directions);
  const GainPattern bound = upper_bound_pattern(cache);
  for (std::size_t i = 0; i < ula.directions.size(); ++i) {
    // Rank one: lambda_max = ||e||^2, i.e. L for unit-magnitude elements.
    CHECK(bound.gains_db[i] == doctest::Approx(to_db(4.0)));
  }
  const Codebook bm = benchmark_codebook(4, 0.65, 4, PhaseSpec::continuous(), "ula");
  const GainPattern comp = composite_pattern(cache, bm);
  const GainPattern gap = gap_map(comp, bound);
  for (double g : gap.gains_db) {
    CHECK(g >= 0.0);
  }
  CHECK_THROWS_AS(gap_map(bound, comp), InvalidArgument);

  // Broadside beam achieves the bound at broadside.
  Codebook broad;
  broad.entries.push_back({"ula", BeamWeights::from_phases(std::vector<double>(4, 0.0), PhaseSpec::discrete(5))});
  const GainPattern g2 = gap_map(composite_pattern(cache, broad), bound);
  CHECK(std::abs(g2.gains_db[120]) < 1e-9);
}

TEST_CASE("isotropic conservation") {
  const SyntheticUla ula = generate_ula_efield({4, 0.5, 0.0, std::size_t{2000}});
  const CoherenceCache cache(std::vector<EFieldGrid>{ula.grid}, ula.directions);
  Rng rng(5);
  for (int b = 0; b < 10; ++b) {
    std::vector<double> phases(4);
    for (double& p : phases) {
      p = kTwoPi * rng.uniform();
    }
    const auto g = cache.gains(0, BeamWeights::from_phases(phases, PhaseSpec::continuous()));
    double mean = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      mean += ula.directions.weights()[i] * g[i];
    }
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("pattern csv and stats json") {
  const DirectionSet d = fibonacci_directions(3);
  const GainPattern p{d, {1.0, 2.0, 3.0}, "p"};
  std::ostringstream os;
  write_pattern_csv(os, p);
  const std::string csv = os.str();
  CHECK(csv.rfind("theta_deg,phi_deg,weight,gain_db\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const std::string js = stats_to_json(coverage_stats(p, std::vector<double>{50.0}));
  CHECK(js.find("\"mean_db\"") != std::string::npos);
  CHECK(js.find("\"50\"") != std::string::npos);
}

} // TEST_SUITE
