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

#include <benchmark/benchmark.h>

#include "beamcb/oracle.hpp"
#include "beamcb/synthesis.hpp"

using namespace beamcb;

static void BM_SolveSdr(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const CoherenceMatrix m = oracle::random_instance({L, 2, 17});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sdr(m).objective);
  }
}
BENCHMARK(BM_SolveSdr)->Arg(4)->Arg(8)->Arg(16);

static void BM_DesignBeam(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const CoherenceMatrix m = oracle::random_instance({L, 2, 23});
  for (auto _ : state) {
    benchmark::DoNotOptimize(design_beam(m, PhaseSpec::discrete(5), BeamStrategy::sdr_grp_cd, 1).gain(m));
  }
}
BENCHMARK(BM_DesignBeam)->Arg(4)->Arg(8)->Arg(16);

static void BM_BruteForceB3(benchmark::State& state) {
  const CoherenceMatrix m = oracle::random_instance({4, 2, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::brute_force_b3(m, 2).gain);
  }
}
BENCHMARK(BM_BruteForceB3);

static void BM_KMeansUla(benchmark::State& state) {
  const SyntheticUla ula = generate_ula_efield({4, 0.65, 0.0, std::nullopt});
  const std::vector<EFieldGrid> grids{ula.grid};
  KMeansConfig cfg;
  cfg.k = 4;
  cfg.init = ExplicitInit{benchmark_codebook(4, 0.65, 4, PhaseSpec::discrete(5), "ula")};
  cfg.direction_set = ula.directions;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans_codebook(cfg, grids).iterations);
  }
}
BENCHMARK(BM_KMeansUla)->Unit(benchmark::kMillisecond);

static void BM_GreedyThreeArrays(benchmark::State& state) {
  std::vector<EFieldGrid> grids;
  const std::array<std::array<double, 3>, 3> axes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int i = 0; i < 3; ++i) {
    MeshUlaSpec m;
    m.ula = {4, 0.5, 1.0, std::nullopt};
    m.axis = axes[i];
    grids.push_back(generate_ula_mesh_efield(m, std::string(1, static_cast<char>('x' + i))));
  }
  const DirectionSet dirs = snap_to_grid(fibonacci_directions(1800), grids[0]);
  const CandidateSet cands = generate_candidates(grids, 363, CandidateMethod::eigen, PhaseSpec::discrete(5), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_codebook(cands, grids, MeanOverRegion{}, SizeLimit{12}, dirs).picks.size());
  }
}
BENCHMARK(BM_GreedyThreeArrays)->Unit(benchmark::kMillisecond);

static void BM_CoherenceCache(benchmark::State& state) {
  MeshUlaSpec m;
  m.ula = {8, 0.5, 1.0, std::nullopt};
  const std::vector<EFieldGrid> grids{generate_ula_mesh_efield(m, "z")};
  const DirectionSet dirs = mesh_directions(grids[0]);
  for (auto _ : state) {
    const CoherenceCache cache(grids, dirs);
    benchmark::DoNotOptimize(cache.num_directions());
  }
}
BENCHMARK(BM_CoherenceCache)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
