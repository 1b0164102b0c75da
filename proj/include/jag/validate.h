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

#ifndef JAG_VALIDATE_H_
#define JAG_VALIDATE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "jag/graph.h"

namespace jag {

using NodePair = std::pair<NodeId, NodeId>;

inline constexpr std::size_t kDefaultRejectionBudget = 1'000'000;

// Pairs (u, v), u != v, drawn uniformly with replacement from the pairs
// whose shared community set is exactly `fixed`. Either node may belong to
// further communities. Throws SamplingExhaustedError once `max_attempts`
// draws have been rejected in total.
std::vector<NodePair> sample_constrained_pairs(
    const Affiliation& a, std::span<const CommunityId> fixed, std::size_t n_pairs,
    std::uint64_t seed, std::size_t max_attempts = kDefaultRejectionBudget);

// Uniform unordered pairs of distinct nodes, with replacement.
std::vector<NodePair> sample_uniform_pairs(std::size_t node_count, std::size_t n_pairs,
                                           std::uint64_t seed);

struct BinSpec {
  std::size_t bins = 10;
  // Bins below this many pairs are flagged as low-count.
  std::size_t min_count = 30;
};

struct BinningReport {
  std::vector<double> bin_edges;  // bins + 1 ascending breakpoints on [0,1]
  std::vector<std::uint64_t> pair_count;
  std::vector<std::uint64_t> edge_count;
  std::vector<double> p_edge;
  std::vector<double> mean_jaccard;
  std::vector<bool> low_count;
  // Least squares through the origin of p_edge on mean Jaccard, weighted by
  // pair counts.
  double fitted_slope = 0.0;
  // Weighted mean squared residual of that fit.
  double fit_residual = 0.0;

  std::size_t bins() const { return pair_count.size(); }
  std::uint64_t total_pairs() const;
};

// Equal-width Jaccard bins; J = 1 falls into the last bin.
BinningReport binning_experiment(const Graph& g, const Affiliation& a,
                                 std::span<const NodePair> pairs, const BinSpec& spec);

// Communities with at least `min_size` members none of which belongs to any
// other community, uniformly subsampled down to `max_count`.
std::vector<CommunityId> find_isolated_communities(const Affiliation& a,
                                                   std::size_t min_size,
                                                   std::size_t max_count,
                                                   std::uint64_t seed);

struct IsolatedConfig {
  std::size_t min_size = 5;
  std::size_t max_count = 5;
  std::uint64_t seed = 1;
  std::optional<double> comparison_alpha;
};

struct IsolatedCommunityReport {
  std::vector<CommunityId> communities;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> internal_edges;
  std::vector<double> densities;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single community
  std::optional<double> comparison_alpha;
};

// Internal edge density of the isolated communities; nullopt when there is
// none.
std::optional<IsolatedCommunityReport> isolated_density_experiment(
    const Graph& g, const Affiliation& a, const IsolatedConfig& cfg);

}  // namespace jag

#endif  // JAG_VALIDATE_H_
