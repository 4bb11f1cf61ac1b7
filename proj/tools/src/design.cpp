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

#include "design.hpp"

namespace beamcb::cli {

using nlohmann::ordered_json;

namespace {

double spacing_for(const RunConfig& cfg) {
  if (cfg.algorithm.spacing_lambda) {
    return *cfg.algorithm.spacing_lambda;
  }
  std::optional<double> d;
  for (const auto& a : cfg.arrays) {
    if (!a.synthetic || (d && *d != a.synthetic->spacing_over_lambda)) {
      throw ConfigError("algorithm.spacing_lambda is required unless all arrays are synthetic with one spacing");
    }
    d = a.synthetic->spacing_over_lambda;
  }
  return *d;
}

std::size_t per_array(const RunConfig& cfg, std::size_t num_arrays) {
  if (cfg.algorithm.k % num_arrays != 0) {
    throw ConfigError("K = " + std::to_string(cfg.algorithm.k) + " is not a multiple of the " +
                      std::to_string(num_arrays) + " arrays");
  }
  return cfg.algorithm.k / num_arrays;
}

Codebook reference_codebook(const RunConfig& cfg, const LoadedArrays& arrays, Algorithm which) {
  const std::size_t kp = per_array(cfg, arrays.grids.size());
  if (which == Algorithm::benchmark) {
    return benchmark_codebook(arrays.grids, spacing_for(cfg), kp, cfg.algorithm.phase_spec());
  }
  if (!cfg.algorithm.phase_bits) {
    throw ConfigError("the 3c codebook needs discrete phase_bits");
  }
  return codebook_802_15_3c(arrays.grids, kp, *cfg.algorithm.phase_bits);
}

ordered_json aim_json(const Direction& d) { return ordered_json::array({d.theta_deg, d.phi_deg}); }

} // namespace

void check_codebook(const Codebook& cb, const std::vector<EFieldGrid>& grids) {
  for (std::size_t i = 0; i < cb.size(); ++i) {
    const auto& e = cb.entries[i];
    const EFieldGrid* grid = nullptr;
    for (const auto& g : grids) {
      if (g.array_id() == e.array_id) {
        grid = &g;
      }
    }
    if (grid == nullptr) {
      throw ConfigError("codebook entry " + std::to_string(i) + " references unknown array '" + e.array_id + "'");
    }
    if (grid->num_elements() != e.weights.size()) {
      throw ConfigError("codebook entry " + std::to_string(i) + " has " + std::to_string(e.weights.size()) +
                        " weights but array '" + e.array_id + "' has " + std::to_string(grid->num_elements()) +
                        " elements");
    }
  }
}

DesignOutcome run_design(const RunConfig& cfg, const LoadedArrays& arrays) {
  const auto& al = cfg.algorithm;
  const PhaseSpec spec = al.phase_spec();
  DesignOutcome out;
  switch (al.name) {
  case Algorithm::benchmark:
  case Algorithm::ieee_3c:
    out.codebook = reference_codebook(cfg, arrays, al.name);
    out.trace = ordered_json::object();
    return out;
  case Algorithm::greedy: {
    const DirectionSet dirs = resolve_directions(al.directions, arrays);
    const CandidateSet cands = generate_candidates(arrays.grids, al.candidates.count_per_sphere, al.candidates.method,
                                                   spec, al.seed, al.n_rand);
    const GreedyResult r =
        greedy_codebook(cands, arrays.grids, al.criterion, al.stop.value_or(SizeLimit{al.k}), dirs);
    out.codebook = r.codebook;
    ordered_json picks = ordered_json::array();
    for (std::size_t i = 0; i < r.picks.size(); ++i) {
      const Candidate& c = cands.candidates[r.picks[i]];
      picks.push_back({{"candidate", r.picks[i]}, {"array", c.array_id}, {"aim", aim_json(c.aim)},
                       {"utility", r.utility_trace[i]}});
    }
    out.trace["candidates"] = cands.candidates.size();
    out.trace["picks"] = picks;
    if (r.pool_exhausted) {
      out.status = "pool_exhausted";
      out.warnings.push_back("candidate pool exhausted before the stopping rule was met");
    }
    return out;
  }
  case Algorithm::kmeans: {
    KMeansConfig kc;
    kc.k = al.k;
    kc.direction_set = resolve_directions(al.directions, arrays);
    kc.phase_spec = spec;
    kc.n_rand = al.n_rand;
    kc.max_iterations = al.max_iterations;
    kc.seed = al.seed;
    if (al.init == "benchmark") {
      kc.init = ExplicitInit{reference_codebook(cfg, arrays, Algorithm::benchmark)};
    } else if (al.init == "3c") {
      kc.init = ExplicitInit{reference_codebook(cfg, arrays, Algorithm::ieee_3c)};
    } else if (al.init == "uniform") {
      kc.init = UniformInit{};
    } else if (al.init == "greedy") {
      kc.init = GreedyInit{al.candidates, al.criterion};
    } else {
      throw ConfigError("algorithm.init: expected benchmark, 3c, uniform or greedy, got '" + al.init + "'");
    }
    const KMeansResult r = kmeans_codebook(kc, arrays.grids);
    out.codebook = r.codebook;
    out.status = std::string(to_string(r.stop));
    out.trace["iterations"] = r.iterations;
    out.trace["mean_gain_db"] = r.mean_gain_trace_db;
    out.trace["initial"] = nlohmann::ordered_json::parse(codebook_to_json(r.initial));
    if (r.stop == KMeansStop::max_iterations) {
      out.warnings.push_back("K-Means stopped at max_iterations without converging");
    }
    return out;
  }
  }
  throw ConfigError("unknown algorithm");
}

Evaluation evaluate(const RunConfig& cfg, const LoadedArrays& arrays, const Codebook& cb) {
  check_codebook(cb, arrays.grids);
  const DirectionSet dirs =
      restrict_region(resolve_directions(cfg.evaluation.directions, arrays), cfg.evaluation.region);
  Evaluation ev{composite_pattern(arrays.grids, cb, dirs), {}};
  ev.stats = coverage_stats(ev.composite, cfg.evaluation.percentiles);
  return ev;
}

} // namespace beamcb::cli
