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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "jag/errors.h"
#include "jag/generator.h"
#include "oracles.h"

namespace jag {
namespace {

double relative_gap(double x, double y) {
  return std::abs(x - y) / std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

TEST(JagEdgeProbTest, IsolatedCommunityGivesAlpha) {
  Affiliation a = Affiliation::from_cover(2, {{0, 1}});
  EXPECT_DOUBLE_EQ(jag_edge_prob(a, {0.26, 0.0}, 0, 1), 0.26);
}

TEST(JagEdgeProbTest, DisjointSetsGiveZero) {
  Affiliation a = Affiliation::from_cover(2, {{0}, {1}});
  EXPECT_EQ(jag_edge_prob(a, {0.9, 0.0}, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(jag_edge_prob(a, {0.9, 1e-8}, 0, 1), 1e-8);
}

TEST(JagEdgeProbTest, ThirdJaccard) {
  // S_u = {0, 1}, S_v = {0, 2}: J = 1/3.
  Affiliation a = Affiliation::from_cover(2, {{0, 1}, {0}, {1}});
  EXPECT_DOUBLE_EQ(jag_edge_prob(a, {0.5, 0.0}, 0, 1), 1.0 / 6.0);
}

TEST(JagEdgeProbTest, ZeroEpsilonIsExactProduct) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    double alpha = unit(rng);
    double j = unit(rng);
    double p = jag_prob(j, alpha, 0.0);
    EXPECT_LE(std::abs(p - alpha * j), std::nextafter(alpha * j, 2.0) - alpha * j);
  }
}

TEST(JagEdgeProbTest, MonotoneInJaccardAndAlpha) {
  for (double eps : {0.0, 1e-8, 0.01}) {
    for (int a = 0; a <= 20; ++a) {
      for (int j = 0; j < 20; ++j) {
        double alpha = a / 20.0;
        EXPECT_LE(jag_prob(j / 20.0, alpha, eps), jag_prob((j + 1) / 20.0, alpha, eps));
        if (a < 20) {
          EXPECT_LE(jag_prob(j / 20.0, alpha, eps), jag_prob(j / 20.0, alpha + 0.05, eps));
        }
      }
    }
  }
}

TEST(JagEdgeProbTest, RejectsBadParams) {
  Affiliation a(2, 1);
  EXPECT_THROW(jag_edge_prob(a, {1.5, 0.0}, 0, 1), ArgumentError);
  EXPECT_THROW(jag_edge_prob(a, {0.5, 1.0}, 0, 1), ArgumentError);
  EXPECT_THROW(jag_edge_prob(a, {0.5, 0.0}, 0, 2), ArgumentError);
}

TEST(AgmEdgeProbTest, SingleSharedCommunity) {
  Affiliation a = Affiliation::from_cover(2, {{0, 1}});
  EXPECT_DOUBLE_EQ(agm_edge_prob(a, {{0.3}}, 0, 1), 0.3);
}

TEST(AgmEdgeProbTest, TwoSharedCommunitiesMatchCoinEnumeration) {
  Affiliation a = Affiliation::from_cover(2, {{0, 1}, {0, 1}});
  // Four equally likely coin outcomes; only tails-tails leaves no edge.
  double enumerated = 0.0;
  for (int first = 0; first < 2; ++first) {
    for (int second = 0; second < 2; ++second) {
      if (first || second) enumerated += 0.25;
    }
  }
  EXPECT_DOUBLE_EQ(agm_edge_prob(a, {{0.5, 0.5}}, 0, 1), enumerated);
  EXPECT_DOUBLE_EQ(enumerated, 0.75);
}

TEST(AgmEdgeProbTest, NoSharedCommunity) {
  Affiliation a = Affiliation::from_cover(2, {{0}, {1}});
  EXPECT_EQ(agm_edge_prob(a, {{0.9, 0.9}}, 0, 1), 0.0);
  EXPECT_THROW(agm_edge_prob(a, {{0.9}}, 0, 1), ArgumentError);
}

TEST(AgmEdgeProbTest, OrderInvariantAndMonotone) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Affiliation a = Affiliation::from_cover(2, {{0, 1}, {0, 1}, {0, 1}, {0}});
  for (int i = 0; i < 200; ++i) {
    AgmParams p{{unit(rng), unit(rng), unit(rng), unit(rng)}};
    AgmParams reversed{{p.per_community_prob[2], p.per_community_prob[1],
                        p.per_community_prob[0], p.per_community_prob[3]}};
    EXPECT_NEAR(agm_edge_prob(a, p, 0, 1), agm_edge_prob(a, reversed, 0, 1), 1e-15);
    AgmParams bumped = p;
    bumped.per_community_prob[1] = std::min(1.0, bumped.per_community_prob[1] + 0.1);
    EXPECT_LE(agm_edge_prob(a, p, 0, 1), agm_edge_prob(a, bumped, 0, 1));
  }
}

TEST(LogLikelihoodTest, EmptyGraphEmptySets) {
  Graph g(10);
  Affiliation a(10, 3);
  EXPECT_NEAR(log_likelihood(g, a, {0.5, 1e-8}), 45.0 * std::log1p(-1e-8), 1e-20);
}

TEST(LogLikelihoodTest, SinglePair) {
  std::vector<Edge> e = {{0, 1}};
  Graph g = Graph::from_edges(2, e);
  Affiliation a = Affiliation::from_cover(2, {{0, 1}});
  EXPECT_DOUBLE_EQ(log_likelihood(g, a, {0.7, 0.0}), std::log(0.7));
}

TEST(LogLikelihoodTest, MismatchedSizes) {
  Graph g(3);
  Affiliation a(4, 1);
  EXPECT_THROW(log_likelihood(g, a, {0.5, 1e-8}), ArgumentError);
}

TEST(LogLikelihoodTest, MatchesNaiveDoubleLoop) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> size(2, 60);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = size(rng);
    Affiliation a = testing::random_affiliation(n, 1 + trial % 6, 0.3, rng);
    Graph g = testing::random_graph(n, unit(rng) * 0.5, rng);
    double alpha = unit(rng);
    double eps = trial % 3 == 0 ? 1e-8 : 1e-3;
    double fast = log_likelihood(g, a, {alpha, eps});
    double slow = testing::naive_log_likelihood(testing::edge_set(g), testing::sets_of(a),
                                                alpha, eps);
    EXPECT_LE(relative_gap(fast, slow), 1e-9) << "trial " << trial;
  }
}

TEST(LogLikelihoodDeltaTest, MatchesFullRecomputation) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 30;
    const std::size_t k = 2 + trial % 5;
    Affiliation a = testing::random_affiliation(n, k, 0.35, rng);
    Graph g = testing::random_graph(n, 0.2, rng);
    ModelParams params{unit(rng), 1e-6};

    std::uniform_int_distribution<NodeId> node(0, n - 1);
    std::uniform_int_distribution<CommunityId> comm(0, k - 1);
    MembershipMove move;
    for (;;) {
      NodeId u = node(rng);
      CommunityId c = comm(rng);
      CommunityId d = comm(rng);
      int kind = trial % 3;
      if (kind == 0 && a.contains(u, c)) {
        move = MembershipMove::remove(u, c);
        break;
      }
      if (kind == 1 && !a.contains(u, c)) {
        move = MembershipMove::add(u, c);
        break;
      }
      if (kind == 2 && a.contains(u, c) && !a.contains(u, d)) {
        move = MembershipMove::swap(u, c, d);
        break;
      }
    }
    double delta = log_likelihood_delta(g, a, params, move);
    auto edges = testing::edge_set(g);
    double before = testing::naive_log_likelihood(edges, testing::sets_of(a), params.alpha,
                                                  params.epsilon);
    Affiliation after = a;
    apply_move(after, move);
    double full = testing::naive_log_likelihood(edges, testing::sets_of(after),
                                                params.alpha, params.epsilon);
    EXPECT_NEAR(delta, full - before, 1e-9 * std::max(1.0, std::abs(full - before)))
        << "trial " << trial;
  }
}

TEST(LogLikelihoodDeltaTest, UntouchedPairsGiveZero) {
  // Node 0 alone in community 0, nobody in community 1: no pair changes.
  Graph g(4);
  Affiliation a = Affiliation::from_cover(4, {{0}, {}, {1, 2, 3}});
  EXPECT_EQ(log_likelihood_delta(g, a, {0.5, 1e-8}, MembershipMove::swap(0, 0, 1)), 0.0);
}

TEST(LogLikelihoodDeltaTest, DeletingOnlyMembershipOfConnectedNode) {
  std::vector<Edge> e = {{0, 1}};
  Graph g = Graph::from_edges(2, e);
  Affiliation a = Affiliation::from_cover(2, {{0, 1}});
  double delta = log_likelihood_delta(g, a, {0.5, 0.0}, MembershipMove::remove(0, 0));
  EXPECT_EQ(delta, -std::numeric_limits<double>::infinity());
  double softened = log_likelihood_delta(g, a, {0.5, 1e-8}, MembershipMove::remove(0, 0));
  EXPECT_TRUE(std::isfinite(softened));
  EXPECT_LT(softened, -10.0);
}

TEST(LogLikelihoodDeltaTest, RejectsIllegalMoves) {
  Graph g(2);
  Affiliation a = Affiliation::from_cover(2, {{0}, {1}});
  ModelParams p{0.5, 1e-8};
  EXPECT_THROW(log_likelihood_delta(g, a, p, MembershipMove::remove(0, 1)), ArgumentError);
  EXPECT_THROW(log_likelihood_delta(g, a, p, MembershipMove::add(0, 0)), ArgumentError);
  EXPECT_THROW(log_likelihood_delta(g, a, p, MembershipMove::swap(0, 0, 0)), ArgumentError);
  EXPECT_THROW(log_likelihood_delta(g, a, p, MembershipMove::add(5, 0)), ArgumentError);
}

TEST(FitAlphaTest, RecoversGeneratingAlpha) {
  PlantedConfig cfg{RandomMemberships{300, 3, 1, 2}, 0, 0, 9};
  Affiliation a = make_planted_affiliation(cfg);
  Graph g = sample_jag_graph(a, {0.5, 1e-8}, 10);
  AlphaFit fit = fit_alpha(g, a, GridSpec{});
  EXPECT_GE(fit.alpha, 0.45);
  EXPECT_LE(fit.alpha, 0.55);
  EXPECT_NEAR(fit.log_likelihood, log_likelihood(g, a, {fit.alpha, 1e-8}), 1e-9);
}

TEST(FitAlphaTest, EdgelessGraphPicksSmallestAlpha) {
  Graph g(6);
  Affiliation a = Affiliation::from_cover(6, {{0, 1, 2, 3, 4, 5}});
  EXPECT_EQ(fit_alpha(g, a, GridSpec{}).alpha, 0.0);
  EXPECT_DOUBLE_EQ(fit_alpha(g, a, GridSpec{0.01, 0.2, 0.9, 0.0}).alpha, 0.2);
}

TEST(FitAlphaTest, CompleteIsolatedCommunityPicksLargestAlpha) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = u + 1; v < 6; ++v) e.emplace_back(u, v);
  }
  Graph g = Graph::from_edges(6, e);
  Affiliation a = Affiliation::from_cover(6, {{0, 1, 2, 3, 4, 5}});
  EXPECT_DOUBLE_EQ(fit_alpha(g, a, GridSpec{}).alpha, 1.0);
  EXPECT_DOUBLE_EQ(fit_alpha(g, a, GridSpec{0.03, 0.0, 1.0, 0.0}).alpha, 0.99);
}

TEST(FitAlphaTest, RejectsEmptyGrid) {
  Graph g(2);
  Affiliation a(2, 1);
  EXPECT_THROW(fit_alpha(g, a, GridSpec{0.0}), ArgumentError);
  EXPECT_THROW(fit_alpha(g, a, GridSpec{0.01, 0.8, 0.2, 0.0}), ArgumentError);
}

TEST(FitAlphaTest, GridArgmaxMatchesFineScan) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Affiliation a = testing::random_affiliation(40, 4, 0.3, rng);
    Graph g = sample_jag_graph(a, {0.1 + 0.04 * trial, 0.0}, trial);
    auto edges = testing::edge_set(g);
    auto sets = testing::sets_of(a);
    double best_alpha = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      double v = testing::naive_log_likelihood(edges, sets, i / 1000.0, 0.0);
      if (v > best) {
        best = v;
        best_alpha = i / 1000.0;
      }
    }
    AlphaFit grid = fit_alpha(g, a, GridSpec{}, 0.0);
    EXPECT_NEAR(grid.alpha, best_alpha, 0.01) << "trial " << trial;
    AlphaFit staged = fit_alpha(g, a, GridSpec::two_stage(), 0.0);
    EXPECT_NEAR(staged.alpha, best_alpha, 0.005) << "trial " << trial;
  }
}

TEST(LikelihoodProfileTest, MergedDeltaEqualsRebuild) {
  std::mt19937_64 rng(13);
  Affiliation a = testing::random_affiliation(35, 5, 0.3, rng);
  Graph g = testing::random_graph(35, 0.15, rng);
  LikelihoodProfile profile = LikelihoodProfile::build(g, a);
  DeltaEvaluator evaluator(35);
  std::uniform_int_distribution<NodeId> node(0, 34);
  std::uniform_int_distribution<CommunityId> comm(0, 4);
  for (int step = 0; step < 300; ++step) {
    NodeId u = node(rng);
    CommunityId c = comm(rng);
    MembershipMove move = a.contains(u, c) ? MembershipMove::remove(u, c)
                                           : MembershipMove::add(u, c);
    profile.merge(evaluator.evaluate(g, a, move));
    apply_move(a, move);
  }
  LikelihoodProfile rebuilt = LikelihoodProfile::build(g, a);
  ASSERT_EQ(profile.classes().size(), rebuilt.classes().size());
  for (const auto& [cls, counts] : rebuilt.classes()) {
    auto it = profile.classes().find(cls);
    ASSERT_NE(it, profile.classes().end());
    EXPECT_EQ(it->second.edges, counts.edges);
    EXPECT_EQ(it->second.non_edges, counts.non_edges);
  }
}

TEST(GridSpecTest, DefaultHasOneHundredOnePoints) {
  auto pts = GridSpec{}.points();
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_EQ(pts.front(), 0.0);
  EXPECT_EQ(pts.back(), 1.0);
}

}  // namespace
}  // namespace jag
