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

#ifndef JAG_GENERATOR_H_
#define JAG_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "jag/graph.h"
#include "jag/models.h"

namespace jag {

// Every node independently joins a uniform number of distinct, uniformly
// chosen communities in [min_memberships, max_memberships].
struct RandomMemberships {
  std::size_t node_count = 0;
  std::size_t community_count = 0;
  std::size_t min_memberships = 1;
  std::size_t max_memberships = 1;
};

// Equal-size communities where every pair of communities shares exactly
// `overlap` nodes that belong to that pair only; the rest are private.
struct PairwiseOverlap {
  std::size_t community_count = 0;
  std::size_t community_size = 0;
  std::size_t overlap = 0;
};

struct ExplicitMemberships {
  std::size_t node_count = 0;
  Cover communities;
};

struct PlantedConfig {
  std::variant<RandomMemberships, PairwiseOverlap, ExplicitMemberships> layout;
  // Appended after the layout: communities on fresh nodes that belong to
  // nothing else.
  std::size_t isolated_communities = 0;
  std::size_t isolated_size = 0;
  std::uint64_t seed = 1;

  void validate() const;
};

Affiliation make_planted_affiliation(const PlantedConfig& cfg);

// Each unordered pair becomes an edge independently with jag_edge_prob.
// Pairs sharing no community connect with probability epsilon; those are
// drawn by geometric skipping so the cost tracks community mass.
Graph sample_jag_graph(const Affiliation& a, const ModelParams& params,
                       std::uint64_t seed);

Graph sample_agm_graph(const Affiliation& a, const AgmParams& params,
                       std::uint64_t seed);

struct ProcessConfig {
  std::size_t rounds = 1;
  double meet_prob = 0.01;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PairTally {
  NodeId u = 0;
  NodeId v = 0;
  std::uint64_t count = 0;
};

struct ProcessResult {
  Graph graph;
  // One entry per pair sharing at least one community, sorted by (u, v).
  // Other pairs can never co-attend.
  std::vector<PairTally> coattendance;
};

// Community-event friendship process: every round draws a uniform ranking
// of all communities, each node attends its best-ranked community, and each
// co-attending pair that is not yet connected becomes connected with
// probability meet_prob. Nodes without communities never attend.
ProcessResult simulate_event_process(const Affiliation& a, const ProcessConfig& cfg);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& x, const Rational& y) {
    return static_cast<unsigned __int128>(x.num) * y.den ==
           static_cast<unsigned __int128>(y.num) * x.den;
  }
};

inline constexpr std::size_t kMaxEnumeratedCommunities = 10;

// Fraction of all rankings of all communities under which u and v attend
// the same community. Throws CapacityError above kMaxEnumeratedCommunities.
Rational coattendance_prob_exact(const Affiliation& a, NodeId u, NodeId v);

// Same count, ranking only S_u ∪ S_v.
Rational coattendance_prob_restricted(const Affiliation& a, NodeId u, NodeId v);

}  // namespace jag

#endif  // JAG_GENERATOR_H_
