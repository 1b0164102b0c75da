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

#include "jag/generator.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>

#include "jag/errors.h"

namespace jag {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Adds an edge to every pair that shares no community with probability
// epsilon, visiting the hits only.
void sample_background(const Affiliation& a, double epsilon, std::mt19937_64& rng,
                       std::vector<Edge>& edges) {
  const std::uint64_t n = a.node_count();
  if (epsilon <= 0.0 || n < 2) return;
  const std::uint64_t total = n * (n - 1) / 2;
  std::geometric_distribution<std::uint64_t> skip(epsilon);
  std::uint64_t row = 0;
  std::uint64_t row_start = 0;  // pair index of (row, row + 1)
  for (std::uint64_t idx = skip(rng); idx < total; idx += 1 + skip(rng)) {
    while (idx >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    auto u = static_cast<NodeId>(row);
    auto v = static_cast<NodeId>(row + 1 + (idx - row_start));
    if (a.shared_count(u, v) == 0) edges.emplace_back(u, v);
  }
}

}  // namespace

void PlantedConfig::validate() const {
  std::visit(
      [](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, RandomMemberships>) {
          if (l.min_memberships > l.max_memberships) {
            throw ArgumentError("min_memberships exceeds max_memberships");
          }
          if (l.max_memberships > l.community_count) {
            throw ArgumentError("max_memberships exceeds community_count");
          }
        } else if constexpr (std::is_same_v<T, PairwiseOverlap>) {
          if (l.community_count > 0 &&
              (l.community_count - 1) * l.overlap > l.community_size) {
            throw ArgumentError("pairwise overlaps exceed the community size");
          }
        } else {
          for (const auto& members : l.communities) {
            for (NodeId u : members) {
              if (u >= l.node_count) throw ArgumentError("explicit member out of range");
            }
          }
        }
      },
      layout);
  if (isolated_communities > 0 && isolated_size == 0) {
    throw ArgumentError("isolated communities need a positive size");
  }
}

Affiliation make_planted_affiliation(const PlantedConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::size_t base_nodes = 0;
  Cover cover;
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, RandomMemberships>) {
          base_nodes = l.node_count;
          cover.assign(l.community_count, {});
          std::uniform_int_distribution<std::size_t> how_many(l.min_memberships,
                                                              l.max_memberships);
          std::vector<CommunityId> ids(l.community_count);
          std::iota(ids.begin(), ids.end(), 0);
          std::vector<CommunityId> picked;
          for (NodeId u = 0; u < l.node_count; ++u) {
            picked.clear();
            std::sample(ids.begin(), ids.end(), std::back_inserter(picked),
                        how_many(rng), rng);
            for (CommunityId c : picked) cover[c].push_back(u);
          }
        } else if constexpr (std::is_same_v<T, PairwiseOverlap>) {
          const std::size_t k = l.community_count;
          const std::size_t priv = k == 0 ? 0 : l.community_size - (k - 1) * l.overlap;
          cover.assign(k, {});
          NodeId next = 0;
          for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t i = 0; i < priv; ++i) cover[c].push_back(next++);
          }
          for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t d = c + 1; d < k; ++d) {
              for (std::size_t i = 0; i < l.overlap; ++i) {
                cover[c].push_back(next);
                cover[d].push_back(next);
                ++next;
              }
            }
          }
          base_nodes = next;
        } else {
          base_nodes = l.node_count;
          cover = l.communities;
        }
      },
      cfg.layout);

  NodeId next = static_cast<NodeId>(base_nodes);
  for (std::size_t i = 0; i < cfg.isolated_communities; ++i) {
    auto& members = cover.emplace_back();
    for (std::size_t j = 0; j < cfg.isolated_size; ++j) members.push_back(next++);
  }
  return Affiliation::from_cover(next, cover);
}

Graph sample_jag_graph(const Affiliation& a, const ModelParams& params,
                       std::uint64_t seed) {
  params.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for_each_comember_pair(a, [&](NodeId u, NodeId w) {
    double p = jag_prob(a.jaccard(u, w), params.alpha, params.epsilon);
    if (unit(rng) < p) edges.emplace_back(u, w);
  });
  sample_background(a, params.epsilon, rng, edges);
  return Graph::from_edges(a.node_count(), edges);
}

Graph sample_agm_graph(const Affiliation& a, const AgmParams& params,
                       std::uint64_t seed) {
  params.validate(a.community_count());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for_each_comember_pair(a, [&](NodeId u, NodeId w) {
    if (unit(rng) < agm_edge_prob(a, params, u, w)) edges.emplace_back(u, w);
  });
  sample_background(a, params.epsilon, rng, edges);
  return Graph::from_edges(a.node_count(), edges);
}

void ProcessConfig::validate() const {
  if (rounds < 1) throw ArgumentError("the event process needs at least one round");
  if (!(meet_prob > 0.0 && meet_prob <= 1.0)) {
    throw ArgumentError("meet probability must lie in (0,1]");
  }
}

ProcessResult simulate_event_process(const Affiliation& a, const ProcessConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.node_count();
  const std::size_t k = a.community_count();

  ProcessResult result;
  std::unordered_map<std::uint64_t, std::size_t> tally_index;
  for_each_comember_pair(a, [&](NodeId u, NodeId w) {
    result.coattendance.push_back({u, w, 0});
  });
  std::sort(result.coattendance.begin(), result.coattendance.end(),
            [](const PairTally& x, const PairTally& y) {
              return pair_key(x.u, x.v) < pair_key(y.u, y.v);
            });
  tally_index.reserve(result.coattendance.size());
  for (std::size_t i = 0; i < result.coattendance.size(); ++i) {
    const auto& t = result.coattendance[i];
    tally_index.emplace(pair_key(t.u, t.v), i);
  }

  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution meet(cfg.meet_prob);
  std::vector<CommunityId> order(k);
  std::vector<std::size_t> rank(k);
  std::vector<std::vector<NodeId>> attendees(k);
  std::vector<CommunityId> active;
  std::unordered_set<std::uint64_t> connected;
  std::vector<Edge> edges;

  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t r = 0; r < k; ++r) rank[order[r]] = r;

    for (CommunityId c : active) attendees[c].clear();
    active.clear();
    for (NodeId u = 0; u < n; ++u) {
      auto su = a.community_set(u);
      if (su.empty()) continue;
      CommunityId best = *std::min_element(
          su.begin(), su.end(), [&](CommunityId x, CommunityId y) { return rank[x] < rank[y]; });
      if (attendees[best].empty()) active.push_back(best);
      attendees[best].push_back(u);
    }

    for (CommunityId c : active) {
      const auto& who = attendees[c];
      for (std::size_t i = 0; i < who.size(); ++i) {
        for (std::size_t j = i + 1; j < who.size(); ++j) {
          auto key = pair_key(who[i], who[j]);
          ++result.coattendance[tally_index.at(key)].count;
          if (connected.contains(key)) continue;
          if (cfg.meet_prob >= 1.0 || meet(rng)) {
            connected.insert(key);
            edges.emplace_back(who[i], who[j]);
          }
        }
      }
    }
  }
  result.graph = Graph::from_edges(n, edges);
  return result;
}

namespace {

Rational count_rankings(std::vector<CommunityId> order, std::uint32_t su_mask,
                        std::uint32_t sv_mask) {
  if (order.size() > kMaxEnumeratedCommunities) {
    throw CapacityError("exact co-attendance enumerates at most " +
                        std::to_string(kMaxEnumeratedCommunities) +
                        " communities, got " + std::to_string(order.size()));
  }
  std::sort(order.begin(), order.end());
  constexpr CommunityId kNone = static_cast<CommunityId>(-1);
  auto attend = [&](std::uint32_t mask) {
    for (CommunityId c : order) {
      if (mask >> c & 1u) return c;
    }
    return kNone;
  };
  std::uint64_t together = 0;
  std::uint64_t total = 0;
  do {
    ++total;
    CommunityId cu = attend(su_mask);
    if (cu != kNone && cu == attend(sv_mask)) ++together;
  } while (std::next_permutation(order.begin(), order.end()));
  std::uint64_t g = std::gcd(together, total);
  return {together / g, total / g};
}

std::uint32_t mask_of(std::span<const CommunityId> s) {
  std::uint32_t m = 0;
  for (CommunityId c : s) m |= 1u << c;
  return m;
}

}  // namespace

Rational coattendance_prob_exact(const Affiliation& a, NodeId u, NodeId v) {
  auto su = a.community_set(u);
  auto sv = a.community_set(v);
  if (a.community_count() > kMaxEnumeratedCommunities) {
    throw CapacityError("exact co-attendance enumerates at most " +
                        std::to_string(kMaxEnumeratedCommunities) +
                        " communities, got " + std::to_string(a.community_count()));
  }
  std::vector<CommunityId> all(a.community_count());
  std::iota(all.begin(), all.end(), 0);
  return count_rankings(std::move(all), mask_of(su), mask_of(sv));
}

Rational coattendance_prob_restricted(const Affiliation& a, NodeId u, NodeId v) {
  auto su = a.community_set(u);
  auto sv = a.community_set(v);
  // Relabel S_u ∪ S_v densely so the masks fit whatever the global ids are.
  std::vector<CommunityId> joint;
  std::set_union(su.begin(), su.end(), sv.begin(), sv.end(), std::back_inserter(joint));
  if (joint.size() > kMaxEnumeratedCommunities) {
    throw CapacityError("restricted enumeration over " + std::to_string(joint.size()) +
                        " communities exceeds the bound");
  }
  auto local_mask = [&](std::span<const CommunityId> s) {
    std::uint32_t m = 0;
    for (CommunityId c : s) {
      m |= 1u << (std::lower_bound(joint.begin(), joint.end(), c) - joint.begin());
    }
    return m;
  };
  std::vector<CommunityId> order(joint.size());
  std::iota(order.begin(), order.end(), 0);
  return count_rankings(std::move(order), local_mask(su), local_mask(sv));
}

}  // namespace jag
