// Copyright 2026 The JAG Community Detection Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jag/validate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "jag/errors.h"

namespace jag {

std::vector<NodePair> sample_constrained_pairs(const Affiliation& a,
                                               std::span<const CommunityId> fixed,
                                               std::size_t n_pairs, std::uint64_t seed,
                                               std::size_t max_attempts) {
  if (fixed.empty()) throw ArgumentError("the fixed community set must be non-empty");
  std::vector<CommunityId> target(fixed.begin(), fixed.end());
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());

  // Every qualifying pair lies inside the common members of the fixed set,
  // so drawing from there keeps the draw uniform over qualifying pairs.
  auto first = a.members(target.front());
  std::vector<NodeId> candidates(first.begin(), first.end());
  for (std::size_t i = 1; i < target.size(); ++i) {
    auto m = a.members(target[i]);
    std::vector<NodeId> next;
    std::set_intersection(candidates.begin(), candidates.end(), m.begin(), m.end(),
                          std::back_inserter(next));
    candidates = std::move(next);
  }

  std::vector<NodePair> out;
  out.reserve(n_pairs);
  if (n_pairs == 0) return out;
  if (candidates.size() < 2) {
    throw SamplingExhaustedError("fewer than two nodes belong to every fixed community", 0);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::size_t attempts = 0;
  while (out.size() < n_pairs) {
    if (attempts++ >= max_attempts) {
      throw SamplingExhaustedError("rejection budget of " + std::to_string(max_attempts) +
                                       " attempts exhausted after " +
                                       std::to_string(out.size()) + " pairs",
                                   out.size());
    }
    NodeId u = candidates[pick(rng)];
    NodeId v = candidates[pick(rng)];
    if (u == v) continue;
    if (a.shared_communities(u, v) == target) out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

std::vector<NodePair> sample_uniform_pairs(std::size_t node_count, std::size_t n_pairs,
                                           std::uint64_t seed) {
  if (node_count < 2) throw ArgumentError("need at least two nodes to sample pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(node_count - 1));
  std::vector<NodePair> out;
  out.reserve(n_pairs);
  while (out.size() < n_pairs) {
    NodeId u = pick(rng);
    NodeId v = pick(rng);
    if (u != v) out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

std::uint64_t BinningReport::total_pairs() const {
  return std::accumulate(pair_count.begin(), pair_count.end(), std::uint64_t{0});
}

BinningReport binning_experiment(const Graph& g, const Affiliation& a,
                                 std::span<const NodePair> pairs, const BinSpec& spec) {
  if (pairs.empty()) throw ArgumentError("binning needs at least one pair");
  if (spec.bins < 1) throw ArgumentError("binning needs at least one bin");
  if (g.node_count() != a.node_count()) {
    throw ArgumentError("graph and affiliation disagree on node count");
  }
  const std::size_t bins = spec.bins;
  BinningReport r;
  r.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) r.bin_edges[i] = static_cast<double>(i) / bins;
  r.pair_count.assign(bins, 0);
  r.edge_count.assign(bins, 0);
  r.p_edge.assign(bins, 0.0);
  r.mean_jaccard.assign(bins, 0.0);
  r.low_count.assign(bins, false);

  std::vector<double> jaccard_sum(bins, 0.0);
  for (auto [u, v] : pairs) {
    auto counts = overlap_counts(a.community_set(u), a.community_set(v));
    // Exact integer bin index; floating J would misplace boundary values.
    std::size_t idx = counts.combined == 0 ? 0 : counts.shared * bins / counts.combined;
    idx = std::min(idx, bins - 1);
    ++r.pair_count[idx];
    r.edge_count[idx] += g.has_edge(u, v);
    jaccard_sum[idx] += counts.jaccard();
  }

  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    r.low_count[i] = r.pair_count[i] < spec.min_count;
    if (r.pair_count[i] == 0) continue;
    double w = static_cast<double>(r.pair_count[i]);
    r.p_edge[i] = static_cast<double>(r.edge_count[i]) / w;
    r.mean_jaccard[i] = jaccard_sum[i] / w;
    sxy += w * r.mean_jaccard[i] * r.p_edge[i];
    sxx += w * r.mean_jaccard[i] * r.mean_jaccard[i];
  }
  r.fitted_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double rss = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    double resid = r.p_edge[i] - r.fitted_slope * r.mean_jaccard[i];
    rss += static_cast<double>(r.pair_count[i]) * resid * resid;
  }
  r.fit_residual = rss / static_cast<double>(pairs.size());
  return r;
}

std::vector<CommunityId> find_isolated_communities(const Affiliation& a,
                                                   std::size_t min_size,
                                                   std::size_t max_count,
                                                   std::uint64_t seed) {
  std::vector<CommunityId> found;
  for (CommunityId c = 0; c < a.community_count(); ++c) {
    auto m = a.members(c);
    if (m.size() < min_size || m.empty()) continue;
    bool isolated = std::all_of(m.begin(), m.end(),
                                [&](NodeId u) { return a.community_set(u).size() == 1; });
    if (isolated) found.push_back(c);
  }
  if (found.size() <= max_count) return found;
  std::mt19937_64 rng(seed);
  std::vector<CommunityId> chosen;
  std::sample(found.begin(), found.end(), std::back_inserter(chosen), max_count, rng);
  return chosen;
}

std::optional<IsolatedCommunityReport> isolated_density_experiment(
    const Graph& g, const Affiliation& a, const IsolatedConfig& cfg) {
  if (g.node_count() != a.node_count()) {
    throw ArgumentError("graph and affiliation disagree on node count");
  }
  auto ids = find_isolated_communities(a, cfg.min_size, cfg.max_count, cfg.seed);
  if (ids.empty()) return std::nullopt;

  IsolatedCommunityReport r;
  r.communities = ids;
  r.comparison_alpha = cfg.comparison_alpha;
  for (CommunityId c : ids) {
    auto m = a.members(c);
    std::uint64_t inside = 0;
    for (NodeId u : m) {
      for (NodeId w : g.neighbors(u)) {
        if (u < w && std::binary_search(m.begin(), m.end(), w)) ++inside;
      }
    }
    std::uint64_t pairs = static_cast<std::uint64_t>(m.size()) * (m.size() - 1) / 2;
    r.sizes.push_back(m.size());
    r.internal_edges.push_back(inside);
    r.densities.push_back(pairs == 0 ? 0.0 : static_cast<double>(inside) / pairs);
  }
  const double k = static_cast<double>(r.densities.size());
  r.mean = std::accumulate(r.densities.begin(), r.densities.end(), 0.0) / k;
  if (r.densities.size() > 1) {
    double ss = 0.0;
    for (double d : r.densities) ss += (d - r.mean) * (d - r.mean);
    r.stddev = std::sqrt(ss / (k - 1.0));
  }
  return r;
}

}  // namespace jag
