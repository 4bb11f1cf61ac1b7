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

#include "beamcb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "beamcb/format.hpp"

namespace beamcb {

double beam_gain(const EFieldGrid& grid, const BeamWeights& w, const Direction& dir) {
  if (w.size() != grid.num_elements()) {
    throw InvalidArgument("beam length does not match array '" + grid.array_id() + "'");
  }
  return kGainFactor * std::max(w.gain(coherence_matrix(grid, dir)), 0.0);
}

const EFieldGrid& find_array(std::span<const EFieldGrid> grids, const std::string& array_id) {
  for (const auto& g : grids) {
    if (g.array_id() == array_id) {
      return g;
    }
  }
  throw InvalidArgument("unknown array '" + array_id + "'");
}

CoherenceCache::CoherenceCache(std::span<const EFieldGrid> grids, const DirectionSet& dirs) : dirs_(dirs) {
  if (grids.empty()) {
    throw InvalidArgument("at least one array is required");
  }
  matrices_.reserve(grids.size() * dirs.size());
  for (const auto& g : grids) {
    if (std::find(ids_.begin(), ids_.end(), g.array_id()) != ids_.end()) {
      throw InvalidArgument("duplicate array id '" + g.array_id() + "'");
    }
    ids_.push_back(g.array_id());
    sizes_.push_back(g.num_elements());
    for (const auto& d : dirs.directions()) {
      matrices_.push_back(coherence_matrix(g, d));
    }
  }
}

std::size_t CoherenceCache::array_index(const std::string& array_id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), array_id);
  if (it == ids_.end()) {
    throw InvalidArgument("unknown array '" + array_id + "'");
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<double> CoherenceCache::gains(std::size_t array, const BeamWeights& w) const {
  if (w.size() != sizes_.at(array)) {
    throw InvalidArgument("beam length does not match array '" + ids_[array] + "'");
  }
  std::vector<double> out(dirs_.size());
  for (std::size_t d = 0; d < dirs_.size(); ++d) {
    out[d] = kGainFactor * std::max(w.gain(at(array, d)), 0.0);
  }
  return out;
}

std::vector<double> CoherenceCache::eigen_bound(std::size_t array) const {
  std::vector<double> out(dirs_.size());
  for (std::size_t d = 0; d < dirs_.size(); ++d) {
    out[d] = kGainFactor * std::max(max_eigenpair(at(array, d)).value, 0.0);
  }
  return out;
}

double weighted_mean_db(const DirectionSet& dirs, std::span<const double> linear) {
  if (linear.size() != dirs.size()) {
    throw InvalidArgument("gain and direction counts differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < linear.size(); ++i) {
    acc += dirs.weights()[i] * linear[i];
  }
  return to_db(acc);
}

double weighted_percentile(const DirectionSet& dirs, std::span<const double> values, double percent) {
  if (values.size() != dirs.size() || values.empty()) {
    throw InvalidArgument("percentile needs matching, non-empty gains and directions");
  }
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw InvalidArgument("percentile must lie in [0, 100]");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const double target = percent / 100.0 - 1e-12;
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += dirs.weights()[i];
    if (cum >= target && dirs.weights()[i] > 0.0) {
      return values[i];
    }
  }
  return values[order.back()];
}

namespace {

std::vector<double> to_db(std::span<const double> linear) {
  std::vector<double> out(linear.size());
  std::transform(linear.begin(), linear.end(), out.begin(), [](double g) { return beamcb::to_db(g); });
  return out;
}

} // namespace

GainPattern beam_pattern(const EFieldGrid& grid, const BeamWeights& w, const DirectionSet& dirs) {
  std::vector<double> g(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    g[i] = beam_gain(grid, w, dirs[i]);
  }
  return {dirs, to_db(g), "beam"};
}

GainPattern composite_pattern(const CoherenceCache& cache, const Codebook& cb) {
  if (cb.empty()) {
    throw InvalidArgument("composite pattern needs a non-empty codebook");
  }
  std::vector<double> best(cache.num_directions(), 0.0);
  for (const auto& e : cb.entries) {
    const auto g = cache.gains(cache.array_index(e.array_id), e.weights);
    for (std::size_t d = 0; d < g.size(); ++d) {
      best[d] = std::max(best[d], g[d]);
    }
  }
  return {cache.directions(), to_db(best), "composite"};
}

GainPattern composite_pattern(std::span<const EFieldGrid> grids, const Codebook& cb, const DirectionSet& dirs) {
  return composite_pattern(CoherenceCache(grids, dirs), cb);
}

CoverageStats coverage_stats(const GainPattern& pattern, std::span<const double> percentiles) {
  const auto& dirs = pattern.directions;
  if (pattern.gains_db.size() != dirs.size() || dirs.empty()) {
    throw InvalidArgument("pattern gains and directions must align and be non-empty");
  }
  std::vector<double> linear(dirs.size());
  std::transform(pattern.gains_db.begin(), pattern.gains_db.end(), linear.begin(), from_db);

  CoverageStats stats;
  stats.mean_db = weighted_mean_db(dirs, linear);
  for (double x : percentiles) {
    stats.percentiles[x] = weighted_percentile(dirs, pattern.gains_db, x);
  }

  std::vector<std::size_t> order(dirs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pattern.gains_db[a] < pattern.gains_db[b]; });
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += dirs.weights()[i];
    const double g = pattern.gains_db[i];
    if (!stats.cdf.empty() && stats.cdf.back().first == g) {
      stats.cdf.back().second = cum;
    } else {
      stats.cdf.emplace_back(g, cum);
    }
  }
  // Pin the last step to exactly one so floating sums do not leave 1 - eps.
  stats.cdf.back().second = 1.0;
  return stats;
}

GainPattern upper_bound_pattern(const CoherenceCache& cache) {
  std::vector<double> best(cache.num_directions(), 0.0);
  for (std::size_t a = 0; a < cache.num_arrays(); ++a) {
    const auto g = cache.eigen_bound(a);
    for (std::size_t d = 0; d < g.size(); ++d) {
      best[d] = std::max(best[d], g[d]);
    }
  }
  return {cache.directions(), to_db(best), "upper_bound"};
}

GainPattern upper_bound_pattern(std::span<const EFieldGrid> grids, const DirectionSet& dirs) {
  return upper_bound_pattern(CoherenceCache(grids, dirs));
}

GainPattern gap_map(const GainPattern& composite, const GainPattern& bound) {
  if (!(composite.directions == bound.directions)) {
    throw InvalidArgument("gap map needs identical direction sets");
  }
  if (composite.gains_db.size() != bound.gains_db.size()) {
    throw InvalidArgument("gap map patterns differ in length");
  }
  std::vector<double> gap(composite.gains_db.size());
  for (std::size_t i = 0; i < gap.size(); ++i) {
    const double d = bound.gains_db[i] - composite.gains_db[i];
    if (d < -1e-9) {
      std::ostringstream os;
      os << "composite exceeds bound by " << -d << " dB at direction " << i;
      throw InvalidArgument(os.str());
    }
    gap[i] = std::max(d, 0.0);
  }
  return {composite.directions, std::move(gap), "gap"};
}

void write_pattern_csv(std::ostream& out, const GainPattern& pattern) {
  out << "theta_deg,phi_deg,weight,gain_db\n";
  for (std::size_t i = 0; i < pattern.directions.size(); ++i) {
    const auto& d = pattern.directions[i];
    out << format_double(d.theta_deg) << ',' << format_double(d.phi_deg) << ','
        << format_double(pattern.directions.weights()[i]) << ','
        << format_double(pattern.gains_db[i]) << '\n';
  }
}

std::string stats_to_json(const CoverageStats& stats) {
  nlohmann::ordered_json j;
  j["mean_db"] = stats.mean_db;
  nlohmann::ordered_json pct = nlohmann::ordered_json::object();
  for (const auto& [x, g] : stats.percentiles) {
    pct[format_double(x)] = g;
  }
  j["percentiles"] = pct;
  nlohmann::ordered_json cdf = nlohmann::ordered_json::array();
  for (const auto& [g, c] : stats.cdf) {
    cdf.push_back({g, c});
  }
  j["cdf"] = cdf;
  return j.dump(2) + "\n";
}

} // namespace beamcb
