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

#include "jag/models.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "jag/errors.h"

namespace jag {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Ascending scan with strict improvement, so ties resolve to the smaller
// alpha.
template <typename F>
AlphaFit scan(const std::vector<double>& points, F&& f) {
  AlphaFit best{points.front(), f(points.front())};
  for (std::size_t i = 1; i < points.size(); ++i) {
    double value = f(points[i]);
    if (value > best.log_likelihood) {
      best = {points[i], value};
    }
  }
  return best;
}

template <typename F>
AlphaFit grid_argmax(const GridSpec& grid, F&& f) {
  grid.validate();
  AlphaFit best = scan(grid.points(), f);
  if (grid.refine_step > 0.0) {
    GridSpec local{grid.refine_step, std::max(grid.lower, best.alpha - grid.step),
                   std::min(grid.upper, best.alpha + grid.step), 0.0};
    AlphaFit refined = scan(local.points(), f);
    if (refined.log_likelihood > best.log_likelihood ||
        (refined.log_likelihood == best.log_likelihood &&
         refined.alpha < best.alpha)) {
      best = refined;
    }
  }
  return best;
}

void add_pair(ClassHistogram& h, JaccardClass cls, bool edge, std::int64_t d) {
  auto& counts = h[cls];
  (edge ? counts.edges : counts.non_edges) += d;
}

}  // namespace

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::kDelete:
      return "delete";
    case MoveKind::kAdd:
      return "add";
    case MoveKind::kSwitch:
      return "switch";
  }
  return "?";
}

void check_move(const Affiliation& a, const MembershipMove& move) {
  if (move.node >= a.node_count()) throw ArgumentError("move node out of range");
  auto need = [&](const std::optional<CommunityId>& c, bool present,
                  const char* what) {
    if (!c) throw ArgumentError(std::string("move is missing ") + what);
    if (*c >= a.community_count()) {
      throw ArgumentError(std::string(what) + " out of range");
    }
    if (a.contains(move.node, *c) != present) {
      throw ArgumentError(std::string(what) +
                          (present ? " is not a membership" : " is already a membership"));
    }
  };
  switch (move.kind) {
    case MoveKind::kDelete:
      need(move.remove_comm, true, "remove_comm");
      if (move.add_comm) throw ArgumentError("delete move carries add_comm");
      break;
    case MoveKind::kAdd:
      need(move.add_comm, false, "add_comm");
      if (move.remove_comm) throw ArgumentError("add move carries remove_comm");
      break;
    case MoveKind::kSwitch:
      need(move.remove_comm, true, "remove_comm");
      need(move.add_comm, false, "add_comm");
      break;
  }
}

void apply_move(Affiliation& a, const MembershipMove& move) {
  check_move(a, move);
  if (move.remove_comm) a.remove_membership(move.node, *move.remove_comm);
  if (move.add_comm) a.add_membership(move.node, *move.add_comm);
}

void revert_move(Affiliation& a, const MembershipMove& move) {
  if (move.add_comm) a.remove_membership(move.node, *move.add_comm);
  if (move.remove_comm) a.add_membership(move.node, *move.remove_comm);
}

// ---------------------------------------------------------------------------

void ModelParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in [0,1], got " + std::to_string(alpha));
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ArgumentError("epsilon must lie in [0,1), got " + std::to_string(epsilon));
  }
}

void AgmParams::validate(std::size_t community_count) const {
  if (per_community_prob.size() != community_count) {
    throw ArgumentError("AGM needs one probability per community (" +
                        std::to_string(community_count) + "), got " +
                        std::to_string(per_community_prob.size()));
  }
  for (double p : per_community_prob) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("AGM probability outside [0,1]");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon outside [0,1)");
}

double jag_edge_prob(const Affiliation& a, const ModelParams& params, NodeId u,
                     NodeId v) {
  params.validate();
  return jag_prob(a.jaccard(u, v), params.alpha, params.epsilon);
}

double agm_edge_prob(const Affiliation& a, const AgmParams& params, NodeId u,
                     NodeId v) {
  params.validate(a.community_count());
  double miss = 1.0;
  for (CommunityId c : a.shared_communities(u, v)) {
    miss *= 1.0 - params.per_community_prob[c];
  }
  return (1.0 - miss) + params.epsilon * miss;
}

double pair_log_term(double jaccard, bool edge, double alpha, double epsilon) {
  if (edge) return std::log(jag_prob(jaccard, alpha, epsilon));
  return std::log1p(-alpha * jaccard) + std::log1p(-epsilon);
}

JaccardClass JaccardClass::of(std::size_t shared, std::size_t combined) {
  if (shared == 0 || combined == 0) return {0, 1};
  std::size_t g = std::gcd(shared, combined);
  return {static_cast<std::uint32_t>(shared / g),
          static_cast<std::uint32_t>(combined / g)};
}

double histogram_log_likelihood(const ClassHistogram& h, double alpha,
                                double epsilon) {
  double finite = 0.0;
  std::int64_t impossible = 0;
  auto accumulate = [&](std::int64_t count, double term) {
    if (count == 0) return;
    if (std::isinf(term)) {
      impossible += count;
    } else {
      finite += static_cast<double>(count) * term;
    }
  };
  for (const auto& [cls, counts] : h) {
    double j = cls.value();
    accumulate(counts.edges, pair_log_term(j, true, alpha, epsilon));
    accumulate(counts.non_edges, pair_log_term(j, false, alpha, epsilon));
  }
  if (impossible > 0) return kNegInf;
  if (impossible < 0) return std::numeric_limits<double>::infinity();
  return finite;
}

void GridSpec::validate() const {
  if (!(step > 0.0)) throw ArgumentError("grid step must be positive");
  if (!(lower >= 0.0 && upper <= 1.0 && lower <= upper)) {
    throw ArgumentError("grid bounds must satisfy 0 <= lower <= upper <= 1");
  }
  if (refine_step < 0.0) throw ArgumentError("refine step must be non-negative");
}

std::vector<double> GridSpec::points() const {
  validate();
  auto n = static_cast<std::size_t>(std::floor((upper - lower) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(std::min(upper, lower + static_cast<double>(i) * step));
  }
  return out;
}

// ---------------------------------------------------------------------------

LikelihoodProfile LikelihoodProfile::build(const Graph& g, const Affiliation& a) {
  if (g.node_count() != a.node_count()) {
    throw ArgumentError("graph has " + std::to_string(g.node_count()) +
                        " nodes but affiliation has " +
                        std::to_string(a.node_count()));
  }
  const std::size_t n = g.node_count();
  LikelihoodProfile profile;
  profile.total_pairs_ = static_cast<std::int64_t>(n) * (n - (n > 0)) / 2;

  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> seen(n, kNone);
  std::vector<NodeId> adjacent(n, kNone);
  std::int64_t enumerated = 0;
  std::int64_t enumerated_edges = 0;
  for (NodeId u = 0; u < n; ++u) {
    auto su = a.community_set(u);
    if (su.empty()) continue;
    for (NodeId w : g.neighbors(u)) adjacent[w] = u;
    for (CommunityId c : su) {
      for (NodeId w : a.members(c)) {
        if (w <= u || seen[w] == u) continue;
        seen[w] = u;
        auto counts = overlap_counts(su, a.community_set(w));
        bool edge = adjacent[w] == u;
        add_pair(profile.classes_, JaccardClass::of(counts.shared, counts.combined),
                 edge, 1);
        ++enumerated;
        enumerated_edges += edge;
      }
    }
  }
  auto& zero = profile.classes_[JaccardClass{}];
  zero.edges += static_cast<std::int64_t>(g.edge_count()) - enumerated_edges;
  zero.non_edges += profile.total_pairs_ - enumerated -
                    (static_cast<std::int64_t>(g.edge_count()) - enumerated_edges);
  return profile;
}

AlphaFit LikelihoodProfile::fit_alpha(const GridSpec& grid, double epsilon) const {
  return grid_argmax(grid,
                     [&](double alpha) { return log_likelihood(alpha, epsilon); });
}

AlphaFit LikelihoodProfile::fit_alpha_with(const ClassHistogram& delta,
                                           const GridSpec& grid,
                                           double epsilon) const {
  ClassHistogram merged = classes_;
  for (const auto& [cls, d] : delta) {
    auto& counts = merged[cls];
    counts.edges += d.edges;
    counts.non_edges += d.non_edges;
  }
  return grid_argmax(grid, [&](double alpha) {
    return histogram_log_likelihood(merged, alpha, epsilon);
  });
}

void LikelihoodProfile::merge(const ClassHistogram& delta) {
  for (const auto& [cls, d] : delta) {
    auto& counts = classes_[cls];
    counts.edges += d.edges;
    counts.non_edges += d.non_edges;
    if (counts.edges == 0 && counts.non_edges == 0 && cls != JaccardClass{}) {
      classes_.erase(cls);
    }
  }
}

double log_likelihood(const Graph& g, const Affiliation& a,
                      const ModelParams& params) {
  params.validate();
  return LikelihoodProfile::build(g, a).log_likelihood(params.alpha, params.epsilon);
}

AlphaFit fit_alpha(const Graph& g, const Affiliation& a, const GridSpec& grid,
                   double epsilon) {
  ModelParams{0.0, epsilon}.validate();
  return LikelihoodProfile::build(g, a).fit_alpha(grid, epsilon);
}

// ---------------------------------------------------------------------------

DeltaEvaluator::DeltaEvaluator(std::size_t node_count)
    : seen_(node_count, 0), neighbor_(node_count, 0) {}

std::uint32_t DeltaEvaluator::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::fill(neighbor_.begin(), neighbor_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

ClassHistogram DeltaEvaluator::evaluate(const Graph& g, const Affiliation& a,
                                        const MembershipMove& move) {
  if (g.node_count() != a.node_count()) {
    throw ArgumentError("graph and affiliation disagree on node count");
  }
  check_move(a, move);
  if (seen_.size() != g.node_count()) {
    seen_.assign(g.node_count(), 0);
    neighbor_.assign(g.node_count(), 0);
    epoch_ = 0;
  }
  const NodeId u = move.node;
  const auto old_set = a.community_set(u);
  new_set_.assign(old_set.begin(), old_set.end());
  if (move.remove_comm) {
    new_set_.erase(std::lower_bound(new_set_.begin(), new_set_.end(),
                                    *move.remove_comm));
  }
  if (move.add_comm) {
    new_set_.insert(std::lower_bound(new_set_.begin(), new_set_.end(),
                                     *move.add_comm),
                    *move.add_comm);
  }

  const std::uint32_t epoch = next_epoch();
  for (NodeId w : g.neighbors(u)) neighbor_[w] = epoch;
  seen_[u] = epoch;

  ClassHistogram delta;
  auto visit = [&](NodeId w) {
    if (seen_[w] == epoch) return;
    seen_[w] = epoch;
    auto sw = a.community_set(w);
    auto before = overlap_counts(old_set, sw);
    std::size_t shared = before.shared;
    if (move.remove_comm && std::binary_search(sw.begin(), sw.end(), *move.remove_comm)) {
      --shared;
    }
    if (move.add_comm && std::binary_search(sw.begin(), sw.end(), *move.add_comm)) {
      ++shared;
    }
    auto old_cls = JaccardClass::of(before.shared, before.combined);
    auto new_cls = JaccardClass::of(shared, new_set_.size() + sw.size() - shared);
    if (old_cls == new_cls) return;
    bool edge = neighbor_[w] == epoch;
    add_pair(delta, old_cls, edge, -1);
    add_pair(delta, new_cls, edge, +1);
  };
  for (CommunityId c : old_set) {
    for (NodeId w : a.members(c)) visit(w);
  }
  if (move.add_comm) {
    for (NodeId w : a.members(*move.add_comm)) visit(w);
  }
  return delta;
}

double log_likelihood_delta(const Graph& g, const Affiliation& a,
                            const ModelParams& params,
                            const MembershipMove& move) {
  params.validate();
  DeltaEvaluator evaluator(g.node_count());
  return histogram_log_likelihood(evaluator.evaluate(g, a, move), params.alpha,
                                  params.epsilon);
}

}  // namespace jag
