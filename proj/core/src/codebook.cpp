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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "beamcb/rng.hpp"
#include "beamcb/synthesis.hpp"

namespace beamcb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Evaluates a selection criterion or threshold on composite gain vectors
/// without rebuilding direction sets for every candidate.
class RegionMean {
public:
  RegionMean(const DirectionSet& dirs, const CoverageRegion& region) {
    region.validate();
    mask_weights_.resize(dirs.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (region.contains(dirs[i])) {
        mask_weights_[i] = dirs.weights()[i];
        total += dirs.weights()[i];
      }
    }
    if (!(total > 0.0)) {
      throw InvalidArgument("region contains no sample directions");
    }
    for (double& w : mask_weights_) {
      w /= total;
    }
  }

  double linear(std::span<const double> gains) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
      acc += mask_weights_[i] * gains[i];
    }
    return acc;
  }

  /// Mean of max(current, candidate) without materializing the composite.
  double linear_with(std::span<const double> current, std::span<const double> candidate) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      acc += mask_weights_[i] * std::max(current[i], candidate[i]);
    }
    return acc;
  }

private:
  std::vector<double> mask_weights_;
};

double percentile_db(const DirectionSet& dirs, std::span<const double> linear, double percent) {
  std::vector<double> db(linear.size());
  std::transform(linear.begin(), linear.end(), db.begin(), [](double g) { return to_db(g); });
  return weighted_percentile(dirs, db, percent);
}

double percentile_utility(const PercentileWeighted& c, const DirectionSet& dirs, std::span<const double> linear) {
  std::vector<double> db(linear.size());
  std::transform(linear.begin(), linear.end(), db.begin(), [](double g) { return to_db(g); });
  double u = 0.0;
  for (const auto& [x, beta] : c.points) {
    if (beta != 0.0) {
      u += beta * weighted_percentile(dirs, db, x);
    }
  }
  return u;
}

} // namespace

void validate(const SelectionCriterion& criterion) {
  std::visit(overloaded{
                 [](const MeanOverRegion& c) { c.region.validate(); },
                 [](const PercentileWeighted& c) {
                   if (c.points.empty()) {
                     throw InvalidArgument("percentile criterion needs at least one point");
                   }
                   bool any = false;
                   for (const auto& [x, beta] : c.points) {
                     if (!(x > 0.0 && x < 100.0)) {
                       throw InvalidArgument("criterion percentiles must lie in (0, 100)");
                     }
                     if (!(beta >= 0.0) || !std::isfinite(beta)) {
                       throw InvalidArgument("criterion weights must be finite and >= 0");
                     }
                     any = any || beta > 0.0;
                   }
                   if (!any) {
                     throw InvalidArgument("criterion weights must not all be zero");
                   }
                 },
             },
             criterion);
}

void validate(const StoppingRule& rule) {
  std::visit(overloaded{
                 [](const SizeLimit& r) {
                   if (r.k < 1) {
                     throw InvalidArgument("codebook size limit must be >= 1");
                   }
                 },
                 [](const MeanThreshold& r) {
                   if (!std::isfinite(r.threshold_db)) {
                     throw InvalidArgument("mean threshold must be finite");
                   }
                   r.region.validate();
                 },
                 [](const PercentileThreshold& r) {
                   if (!std::isfinite(r.threshold_db) || !(r.percent > 0.0 && r.percent < 100.0)) {
                     throw InvalidArgument("percentile threshold needs finite Y' and X in (0, 100)");
                   }
                 },
             },
             rule);
}

double utility(const SelectionCriterion& criterion, const DirectionSet& dirs, std::span<const double> composite_linear) {
  return std::visit(overloaded{
                        [&](const MeanOverRegion& c) { return to_db(RegionMean(dirs, c.region).linear(composite_linear)); },
                        [&](const PercentileWeighted& c) { return percentile_utility(c, dirs, composite_linear); },
                    },
                    criterion);
}

CandidateSet generate_candidates(std::span<const EFieldGrid> grids, std::size_t count_per_sphere,
                                 CandidateMethod method, PhaseSpec spec, std::uint64_t seed, int n_rand) {
  if (count_per_sphere < 1) {
    throw InvalidArgument("candidate count must be >= 1");
  }
  const DirectionSet fib = fibonacci_directions(count_per_sphere);
  const BeamStrategy strategy = method == CandidateMethod::eigen ? BeamStrategy::eigen : BeamStrategy::sdr_grp_cd;
  DesignOptions opts;
  opts.n_rand = n_rand;

  CandidateSet out;
  out.method = method;
  out.candidates.reserve(grids.size() * count_per_sphere);
  std::uint64_t index = 0;
  for (const auto& grid : grids) {
    const DirectionSet snapped = snap_to_grid(fib, grid);
    for (const auto& d : snapped.directions()) {
      const CoherenceMatrix m = coherence_matrix(grid, d);
      out.candidates.push_back({grid.array_id(), design_beam(m, spec, strategy, derive_seed(seed, index), opts), d});
      ++index;
    }
  }
  return out;
}

GreedyResult greedy_codebook(const CandidateSet& candidates, std::span<const EFieldGrid> grids,
                             const SelectionCriterion& criterion, const StoppingRule& stop,
                             const DirectionSet& eval_set) {
  validate(criterion);
  validate(stop);
  if (candidates.candidates.empty()) {
    throw InvalidArgument("greedy selection needs a non-empty candidate set");
  }
  if (eval_set.empty()) {
    throw InvalidArgument("greedy selection needs evaluation directions");
  }
  const CoherenceCache cache(grids, eval_set);
  const std::size_t n_cand = candidates.candidates.size();
  std::vector<std::vector<double>> gains(n_cand);
  for (std::size_t c = 0; c < n_cand; ++c) {
    const auto& cand = candidates.candidates[c];
    gains[c] = cache.gains(cache.array_index(cand.array_id), cand.weights);
  }

  std::optional<RegionMean> mean_eval;
  if (const auto* m = std::get_if<MeanOverRegion>(&criterion)) {
    mean_eval.emplace(eval_set, m->region);
  }
  auto score = [&](std::span<const double> current, std::span<const double> cand) {
    if (mean_eval) {
      return mean_eval->linear_with(current, cand);
    }
    std::vector<double> merged(current.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
      merged[i] = std::max(current[i], cand[i]);
    }
    return percentile_utility(std::get<PercentileWeighted>(criterion), eval_set, merged);
  };
  auto report = [&](double s) { return mean_eval ? to_db(s) : s; };

  auto stop_met = [&](std::span<const double> current, std::size_t size) {
    return std::visit(overloaded{
                          [&](const SizeLimit& r) { return size >= r.k; },
                          [&](const MeanThreshold& r) {
                            return to_db(RegionMean(eval_set, r.region).linear(current)) > r.threshold_db;
                          },
                          [&](const PercentileThreshold& r) {
                            return percentile_db(eval_set, current, r.percent) > r.threshold_db;
                          },
                      },
                      stop);
  };

  GreedyResult result;
  std::vector<double> current(eval_set.size(), 0.0);
  std::vector<bool> used(n_cand, false);
  while (true) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t pick = n_cand;
    for (std::size_t c = 0; c < n_cand; ++c) {
      if (used[c]) {
        continue;
      }
      const double s = score(current, gains[c]);
      if (s > best) {
        best = s;
        pick = c;
      }
    }
    if (pick == n_cand) {
      result.pool_exhausted = true;
      break;
    }
    used[pick] = true;
    for (std::size_t i = 0; i < current.size(); ++i) {
      current[i] = std::max(current[i], gains[pick][i]);
    }
    const auto& cand = candidates.candidates[pick];
    result.codebook.entries.push_back({cand.array_id, cand.weights});
    result.picks.push_back(pick);
    result.utility_trace.push_back(report(best));
    if (stop_met(current, result.codebook.size())) {
      break;
    }
  }
  return result;
}

std::string_view to_string(KMeansStop s) {
  switch (s) {
  case KMeansStop::converged:
    return "converged";
  case KMeansStop::assignments_unchanged:
    return "assignments_unchanged";
  case KMeansStop::max_iterations:
    return "max_iterations";
  }
  return "unknown";
}

std::vector<std::size_t> assign_directions(const CoherenceCache& cache, const Codebook& cb) {
  if (cb.empty()) {
    throw InvalidArgument("assignment needs a non-empty codebook");
  }
  std::vector<std::size_t> assign(cache.num_directions(), 0);
  std::vector<double> best(cache.num_directions(), -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < cb.size(); ++k) {
    const auto g = cache.gains(cache.array_index(cb.entries[k].array_id), cb.entries[k].weights);
    for (std::size_t d = 0; d < g.size(); ++d) {
      if (g[d] > best[d]) {
        best[d] = g[d];
        assign[d] = k;
      }
    }
  }
  return assign;
}

namespace {

double codebook_mean_linear(const CoherenceCache& cache, const Codebook& cb) {
  std::vector<double> best(cache.num_directions(), 0.0);
  for (const auto& e : cb.entries) {
    const auto g = cache.gains(cache.array_index(e.array_id), e.weights);
    for (std::size_t d = 0; d < g.size(); ++d) {
      best[d] = std::max(best[d], g[d]);
    }
  }
  double acc = 0.0;
  for (std::size_t d = 0; d < best.size(); ++d) {
    acc += cache.directions().weights()[d] * best[d];
  }
  return acc;
}

} // namespace

KMeansResult kmeans_codebook(const KMeansConfig& config, std::span<const EFieldGrid> grids) {
  if (config.k < 1) {
    throw InvalidArgument("K-Means needs K >= 1");
  }
  if (config.max_iterations < 1) {
    throw InvalidArgument("K-Means needs max_iterations >= 1");
  }
  if (config.direction_set.size() < config.k) {
    throw InvalidArgument("K-Means needs at least K directions");
  }
  const CoherenceCache cache(grids, config.direction_set);

  Codebook codebook = std::visit(
      overloaded{
          [&](const ExplicitInit& init) { return init.codebook; },
          [&](const UniformInit&) { return uniform_init(config.k, grids, config.phase_spec); },
          [&](const GreedyInit& init) {
            const CandidateSet cands =
                generate_candidates(grids, init.candidates.count_per_sphere, init.candidates.method, config.phase_spec,
                                    derive_seed(config.seed, std::numeric_limits<std::uint64_t>::max()),
                                    init.candidates.n_rand);
            return greedy_codebook(cands, grids, init.criterion, SizeLimit{config.k}, config.direction_set).codebook;
          },
      },
      config.init);
  if (codebook.size() != config.k) {
    throw InvalidArgument("initial codebook has " + std::to_string(codebook.size()) + " beams, expected " +
                          std::to_string(config.k));
  }

  KMeansResult result;
  result.initial = codebook;
  std::vector<std::size_t> beam_array(codebook.size());
  for (std::size_t k = 0; k < codebook.size(); ++k) {
    beam_array[k] = cache.array_index(codebook.entries[k].array_id);
  }

  DesignOptions opts;
  opts.n_rand = config.n_rand;
  const auto& weights = config.direction_set.weights();
  double mean_db = to_db(codebook_mean_linear(cache, codebook));
  result.mean_gain_trace_db.push_back(mean_db);
  std::vector<std::size_t> prev_assign;
  result.stop = KMeansStop::max_iterations;
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    const auto assign = assign_directions(cache, codebook);
    if (!prev_assign.empty() && assign == prev_assign) {
      result.stop = KMeansStop::assignments_unchanged;
      break;
    }
    for (std::size_t k = 0; k < codebook.size(); ++k) {
      const std::size_t a = beam_array[k];
      CoherenceMatrix sum = CoherenceMatrix::zero(cache.num_elements(a));
      bool any = false;
      for (std::size_t d = 0; d < assign.size(); ++d) {
        if (assign[d] == k) {
          sum.add_scaled(cache.at(a, d), weights[d]);
          any = true;
        }
      }
      if (!any) {
        continue;
      }
      const std::uint64_t seed = derive_seed(config.seed, it * codebook.size() + k);
      BeamWeights updated = design_beam(sum, config.phase_spec, BeamStrategy::sdr_grp_cd, seed, opts);
      if (updated.gain(sum) >= codebook.entries[k].weights.gain(sum)) {
        codebook.entries[k].weights = std::move(updated);
      }
    }
    const double next_db = to_db(codebook_mean_linear(cache, codebook));
    result.mean_gain_trace_db.push_back(next_db);
    result.iterations = it;
    const bool flat = next_db - mean_db < 1e-9;
    mean_db = next_db;
    prev_assign = assign;
    if (flat) {
      result.stop = KMeansStop::converged;
      break;
    }
  }
  result.assignment = assign_directions(cache, codebook);
  result.codebook = std::move(codebook);
  return result;
}

Codebook uniform_init(std::size_t k, std::span<const EFieldGrid> grids, PhaseSpec spec) {
  if (k < 1) {
    throw InvalidArgument("uniform initialization needs K >= 1");
  }
  if (grids.empty()) {
    throw InvalidArgument("at least one array is required");
  }
  const DirectionSet fib = fibonacci_directions(k);
  Codebook cb;
  for (const auto& d : fib.directions()) {
    std::size_t best_array = 0;
    Eigenpair best{-1.0, {}};
    for (std::size_t a = 0; a < grids.size(); ++a) {
      const Eigenpair ep = max_eigenpair(coherence_matrix(grids[a], grids[a].nearest(d)));
      if (ep.value > best.value) {
        best = ep;
        best_array = a;
      }
    }
    cb.entries.push_back({grids[best_array].array_id(), BeamWeights::cophase(best.vector, spec)});
  }
  return cb;
}

std::vector<double> benchmark_aims_deg(std::size_t k_prime) {
  if (k_prime < 1) {
    throw InvalidArgument("benchmark codebook needs K' >= 1");
  }
  std::vector<double> out(k_prime);
  for (std::size_t k = 1; k <= k_prime; ++k) {
    const double c = -1.0 + (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(k_prime);
    out[k - 1] = rad2deg(std::acos(c));
  }
  return out;
}

Codebook benchmark_codebook(std::size_t num_elements, double spacing_over_lambda, std::size_t k_prime,
                            PhaseSpec spec, const std::string& array_id) {
  if (k_prime < 1) {
    throw InvalidArgument("benchmark codebook needs K' >= 1");
  }
  if (num_elements < 1) {
    throw InvalidArgument("benchmark codebook needs L >= 1");
  }
  if (!(spacing_over_lambda > 0.0)) {
    throw InvalidArgument("benchmark codebook needs d/lambda > 0");
  }
  Codebook cb;
  std::vector<double> phases(num_elements);
  for (std::size_t k = 1; k <= k_prime; ++k) {
    const double c = -1.0 + (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(k_prime);
    for (std::size_t l = 0; l < num_elements; ++l) {
      phases[l] = kTwoPi * spacing_over_lambda * static_cast<double>(l) * c;
    }
    cb.entries.push_back({array_id, BeamWeights::from_phases(phases, spec)});
  }
  return cb;
}

Codebook benchmark_codebook(std::span<const EFieldGrid> grids, double spacing_over_lambda, std::size_t k_prime,
                            PhaseSpec spec) {
  Codebook cb;
  for (const auto& g : grids) {
    auto part = benchmark_codebook(g.num_elements(), spacing_over_lambda, k_prime, spec, g.array_id());
    cb.entries.insert(cb.entries.end(), part.entries.begin(), part.entries.end());
  }
  return cb;
}

Codebook codebook_802_15_3c(std::size_t num_elements, std::size_t k_prime, int bits, const std::string& array_id) {
  const PhaseSpec spec = PhaseSpec::discrete(bits);
  if (num_elements < 1) {
    throw InvalidArgument("802.15.3c codebook needs L >= 1");
  }
  if (k_prime < 1) {
    throw InvalidArgument("802.15.3c codebook needs K' >= 1");
  }
  const std::uint64_t levels = spec.levels();
  const std::uint64_t kp = k_prime;
  Codebook cb;
  std::vector<double> phases(num_elements);
  for (std::uint64_t k = 1; k <= kp; ++k) {
    // twice mod(k - 1 + K'/2, K'), exact for odd K'
    const std::uint64_t m2 = (2 * (k - 1) + kp) % (2 * kp);
    for (std::uint64_t l = 1; l <= num_elements; ++l) {
      const std::uint64_t idx = ((l - 1) * m2 * levels) / (2 * kp);
      phases[l - 1] = spec.step() * static_cast<double>(idx % levels);
    }
    cb.entries.push_back({array_id, BeamWeights::from_phases(phases, spec)});
  }
  return cb;
}

Codebook codebook_802_15_3c(std::span<const EFieldGrid> grids, std::size_t k_prime, int bits) {
  Codebook cb;
  for (const auto& g : grids) {
    auto part = codebook_802_15_3c(g.num_elements(), k_prime, bits, g.array_id());
    cb.entries.insert(cb.entries.end(), part.entries.begin(), part.entries.end());
  }
  return cb;
}

DirectionSet restrict_region(const DirectionSet& set, const CoverageRegion& region) {
  region.validate();
  if (region.is_full_sphere()) {
    return set;
  }
  std::vector<Direction> dirs;
  std::vector<double> w;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (region.contains(set[i])) {
      dirs.push_back(set[i]);
      w.push_back(set.weights()[i]);
    }
  }
  if (dirs.empty()) {
    throw InvalidArgument("region contains no sample directions");
  }
  double total = 0.0;
  for (double x : w) {
    total += x;
  }
  if (!(total > 0.0)) {
    return DirectionSet::uniform(std::move(dirs));
  }
  return DirectionSet::normalized(std::move(dirs), std::move(w));
}

std::vector<BeamSummary> summarize_codebook(const CoherenceCache& cache, const Codebook& cb) {
  std::vector<BeamSummary> out;
  for (const auto& e : cb.entries) {
    const auto g = cache.gains(cache.array_index(e.array_id), e.weights);
    const auto it = std::max_element(g.begin(), g.end());
    const auto d = static_cast<std::size_t>(it - g.begin());
    out.push_back({e.array_id, cache.directions()[d], to_db(*it)});
  }
  return out;
}

std::string summary_text(const std::vector<BeamSummary>& beams) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "beam  array           theta_deg  phi_deg  peak_db\n";
  for (std::size_t i = 0; i < beams.size(); ++i) {
    const auto& b = beams[i];
    os << std::setw(4) << i << "  " << std::left << std::setw(14) << b.array_id << std::right << std::setw(11)
       << b.aim.theta_deg << std::setw(9) << b.aim.phi_deg << std::setw(9) << b.peak_gain_db << '\n';
  }
  return os.str();
}

} // namespace beamcb
