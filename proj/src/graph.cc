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

#include "jag/graph.h"

#include <algorithm>
#include <string>

#include "jag/errors.h"

namespace jag {

Graph::Graph(std::size_t node_count)
    : node_count_(node_count), offsets_(node_count + 1, 0) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        BuildStats* stats) {
  BuildStats local;
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw ArgumentError("edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ") outside node range " +
                          std::to_string(node_count));
    }
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  auto last = std::unique(canon.begin(), canon.end());
  local.duplicates = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  Graph g(node_count);
  g.edges_ = std::move(canon);
  for (auto [u, v] : g.edges_) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so each target list comes out sorted.
  for (auto [u, v] : g.edges_) g.targets_[cursor[v]++] = u;
  for (auto [u, v] : g.edges_) g.targets_[cursor[u]++] = v;
  if (stats) *stats = local;
  return g;
}

void Graph::check_node(NodeId u) const {
  if (u >= node_count_) {
    throw ArgumentError("node " + std::to_string(u) + " out of range [0," +
                        std::to_string(node_count_) + ")");
  }
}

std::size_t Graph::degree(NodeId u) const {
  check_node(u);
  return offsets_[u + 1] - offsets_[u];
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  check_node(u);
  return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  if (nv.size() < nu.size()) {
    std::swap(nu, nv);
    std::swap(u, v);
  }
  return std::binary_search(nu.begin(), nu.end(), v);
}

Graph Graph::with_node_count(std::size_t node_count) const {
  if (node_count < node_count_) {
    throw ArgumentError("cannot shrink a graph");
  }
  return from_edges(node_count, edges_);
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(node_count_, kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_node(nodes[i]);
    if (local[nodes[i]] != kAbsent) throw ArgumentError("repeated node in subgraph");
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> sub;
  for (NodeId u : nodes) {
    for (NodeId w : neighbors(u)) {
      if (u < w && local[w] != kAbsent) sub.emplace_back(local[u], local[w]);
    }
  }
  return from_edges(nodes.size(), sub);
}

bool Graph::is_consistent() const {
  if (offsets_.size() != node_count_ + 1 || targets_.size() != 2 * edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    if (u >= v || v >= node_count_) return false;
    if (i > 0 && !(edges_[i - 1] < edges_[i])) return false;
  }
  for (NodeId u = 0; u < node_count_; ++u) {
    auto nb = neighbors(u);
    if (!std::is_sorted(nb.begin(), nb.end())) return false;
    for (NodeId w : nb) {
      if (w == u) return false;
      Edge e{std::min(u, w), std::max(u, w)};
      if (!std::binary_search(edges_.begin(), edges_.end(), e)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

std::size_t intersection_size(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

OverlapCounts overlap_counts(std::span<const CommunityId> a,
                             std::span<const CommunityId> b) {
  std::size_t shared = intersection_size(a, b);
  return {shared, a.size() + b.size() - shared};
}

Affiliation::Affiliation(std::size_t node_count, std::size_t community_count)
    : node_to_comms_(node_count), comm_to_nodes_(community_count) {}

Affiliation Affiliation::from_cover(std::size_t node_count, const Cover& cover) {
  Affiliation a(node_count, cover.size());
  for (std::size_t c = 0; c < cover.size(); ++c) {
    for (NodeId u : cover[c]) a.add_membership(u, static_cast<CommunityId>(c));
  }
  return a;
}

void Affiliation::check_node(NodeId u) const {
  if (u >= node_count()) {
    throw ArgumentError("node " + std::to_string(u) + " out of range [0," +
                        std::to_string(node_count()) + ")");
  }
}

void Affiliation::check_community(CommunityId c) const {
  if (c >= community_count()) {
    throw ArgumentError("community " + std::to_string(c) + " out of range [0," +
                        std::to_string(community_count()) + ")");
  }
}

std::span<const CommunityId> Affiliation::community_set(NodeId u) const {
  check_node(u);
  return node_to_comms_[u];
}

std::span<const NodeId> Affiliation::members(CommunityId c) const {
  check_community(c);
  return comm_to_nodes_[c];
}

bool Affiliation::contains(NodeId u, CommunityId c) const {
  check_node(u);
  check_community(c);
  const auto& s = node_to_comms_[u];
  return std::binary_search(s.begin(), s.end(), c);
}

bool Affiliation::add_membership(NodeId u, CommunityId c) {
  check_node(u);
  check_community(c);
  auto& s = node_to_comms_[u];
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it != s.end() && *it == c) return false;
  bool was_switchable = is_switchable(s.size());
  s.insert(it, c);
  auto& m = comm_to_nodes_[c];
  m.insert(std::lower_bound(m.begin(), m.end(), u), u);
  ++membership_count_;
  switchable_nodes_ += is_switchable(s.size());
  switchable_nodes_ -= was_switchable;
  return true;
}

bool Affiliation::remove_membership(NodeId u, CommunityId c) {
  check_node(u);
  check_community(c);
  auto& s = node_to_comms_[u];
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it == s.end() || *it != c) return false;
  bool was_switchable = is_switchable(s.size());
  s.erase(it);
  auto& m = comm_to_nodes_[c];
  m.erase(std::lower_bound(m.begin(), m.end(), u));
  --membership_count_;
  switchable_nodes_ += is_switchable(s.size());
  switchable_nodes_ -= was_switchable;
  return true;
}

std::vector<CommunityId> Affiliation::shared_communities(NodeId u, NodeId v) const {
  auto a = community_set(u);
  auto b = community_set(v);
  std::vector<CommunityId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::size_t Affiliation::shared_count(NodeId u, NodeId v) const {
  return intersection_size(community_set(u), community_set(v));
}

double Affiliation::jaccard(NodeId u, NodeId v) const {
  return overlap_counts(community_set(u), community_set(v)).jaccard();
}

bool Affiliation::is_consistent() const {
  std::size_t total = 0;
  std::size_t switchable = 0;
  for (NodeId u = 0; u < node_count(); ++u) {
    const auto& s = node_to_comms_[u];
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end()) {
      return false;
    }
    for (CommunityId c : s) {
      if (c >= community_count()) return false;
      const auto& m = comm_to_nodes_[c];
      if (!std::binary_search(m.begin(), m.end(), u)) return false;
    }
    total += s.size();
    switchable += is_switchable(s.size());
  }
  std::size_t reverse_total = 0;
  for (CommunityId c = 0; c < community_count(); ++c) {
    const auto& m = comm_to_nodes_[c];
    if (!std::is_sorted(m.begin(), m.end()) ||
        std::adjacent_find(m.begin(), m.end()) != m.end()) {
      return false;
    }
    for (NodeId u : m) {
      if (u >= node_count()) return false;
      const auto& s = node_to_comms_[u];
      if (!std::binary_search(s.begin(), s.end(), c)) return false;
    }
    reverse_total += m.size();
  }
  return total == reverse_total && total == membership_count_ &&
         switchable == switchable_nodes_;
}

Cover Affiliation::to_cover(bool drop_empty) const {
  Cover out;
  out.reserve(community_count());
  for (const auto& m : comm_to_nodes_) {
    if (drop_empty && m.empty()) continue;
    out.push_back(m);
  }
  return out;
}

}  // namespace jag
