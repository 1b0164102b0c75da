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

#ifndef JAG_GRAPH_H_
#define JAG_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace jag {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// A collection of node sets over a shared node universe. Sets may overlap.
using Cover = std::vector<std::vector<NodeId>>;

// Immutable undirected simple graph in CSR form. Edges are stored once in
// canonical (u < v) order; the adjacency lists are sorted.
class Graph {
 public:
  struct BuildStats {
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
  };

  Graph() = default;
  explicit Graph(std::size_t node_count);

  // Builds the simple graph spanned by `edges`. Self-loops and duplicate
  // edges (in either orientation) are dropped and counted in `stats`.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          BuildStats* stats = nullptr);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(NodeId u) const;
  std::span<const NodeId> neighbors(NodeId u) const;
  const std::vector<Edge>& edges() const { return edges_; }

  // Binary search on the shorter adjacency list.
  bool has_edge(NodeId u, NodeId v) const;

  // Same edges over a larger node universe; the new nodes are isolated.
  Graph with_node_count(std::size_t node_count) const;

  // Subgraph induced by `nodes`; node nodes[i] becomes i.
  Graph induced_subgraph(std::span<const NodeId> nodes) const;

  // Cross-checks the edge list against the adjacency view.
  bool is_consistent() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  void check_node(NodeId u) const;

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
};

// Bipartite node <-> community membership with both directions indexed as
// sorted vectors. Community sets are expected to be small, so the sorted
// layout makes intersections a linear merge.
class Affiliation {
 public:
  Affiliation() = default;
  Affiliation(std::size_t node_count, std::size_t community_count);

  // One community per cover entry; duplicate node ids inside a set are
  // collapsed.
  static Affiliation from_cover(std::size_t node_count, const Cover& cover);

  std::size_t node_count() const { return node_to_comms_.size(); }
  std::size_t community_count() const { return comm_to_nodes_.size(); }
  std::size_t membership_count() const { return membership_count_; }

  // Nodes u with 0 < |S_u| < community_count, i.e. nodes admitting a switch.
  std::size_t switchable_node_count() const { return switchable_nodes_; }

  std::span<const CommunityId> community_set(NodeId u) const;
  std::span<const NodeId> members(CommunityId c) const;
  bool contains(NodeId u, CommunityId c) const;

  // Return false when the membership was already present / absent.
  bool add_membership(NodeId u, CommunityId c);
  bool remove_membership(NodeId u, CommunityId c);

  std::vector<CommunityId> shared_communities(NodeId u, NodeId v) const;
  std::size_t shared_count(NodeId u, NodeId v) const;

  // |S_u ∩ S_v| / |S_u ∪ S_v|, and 0 when both sets are empty.
  double jaccard(NodeId u, NodeId v) const;

  // Exhaustive dual-view check.
  bool is_consistent() const;

  // Member lists in community order. Empty communities are kept unless
  // `drop_empty` is set.
  Cover to_cover(bool drop_empty = false) const;

  friend bool operator==(const Affiliation& a, const Affiliation& b) {
    return a.node_to_comms_ == b.node_to_comms_ &&
           a.comm_to_nodes_ == b.comm_to_nodes_;
  }

 private:
  void check_node(NodeId u) const;
  void check_community(CommunityId c) const;
  bool is_switchable(std::size_t set_size) const {
    return set_size > 0 && set_size < community_count();
  }

  std::vector<std::vector<CommunityId>> node_to_comms_;
  std::vector<std::vector<NodeId>> comm_to_nodes_;
  std::size_t membership_count_ = 0;
  std::size_t switchable_nodes_ = 0;
};

// Size of the intersection of two ascending ranges.
std::size_t intersection_size(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);

// Intersection and union sizes of two community sets.
struct OverlapCounts {
  std::size_t shared = 0;
  std::size_t combined = 0;

  double jaccard() const {
    return combined == 0 ? 0.0 : static_cast<double>(shared) / combined;
  }
};

OverlapCounts overlap_counts(std::span<const CommunityId> a,
                             std::span<const CommunityId> b);

// Calls f(u, w) once for every pair u < w sharing at least one community,
// in ascending (u, w) order of first discovery per u.
template <typename F>
void for_each_comember_pair(const Affiliation& a, F&& f) {
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> seen(a.node_count(), kNone);
  for (NodeId u = 0; u < a.node_count(); ++u) {
    for (CommunityId c : a.community_set(u)) {
      for (NodeId w : a.members(c)) {
        if (w <= u || seen[w] == u) continue;
        seen[w] = u;
        f(u, w);
      }
    }
  }
}

}  // namespace jag

#endif  // JAG_GRAPH_H_
