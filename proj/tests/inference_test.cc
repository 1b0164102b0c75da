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

#include "jag/inference.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "jag/errors.h"
#include "jag/generator.h"
#include "jag/metrics.h"
#include "oracles.h"

namespace jag {
namespace {

using testing::within_3_sigma;

McmcConfig small_config(std::size_t communities) {
  McmcConfig cfg;
  cfg.community_count = communities;
  cfg.max_iters = 20000;
  cfg.patience = 2000;
  cfg.restarts = 5;
  cfg.seed = 7;
  return cfg;
}

TEST(InitialAssignmentTest, NearCertainMembership) {
  Graph g(20);
  McmcConfig cfg = small_config(3);
  cfg.init_membership_prob = 1.0 - 1e-12;
  Affiliation a = random_initial_assignment(g, cfg, 1);
  EXPECT_EQ(a.membership_count(), 60u);
}

TEST(InitialAssignmentTest, EveryNodeHasACommunity) {
  Graph g(500);
  McmcConfig cfg = small_config(4);
  cfg.init_membership_prob = 0.05;
  Affiliation a = random_initial_assignment(g, cfg, 3);
  for (NodeId u = 0; u < 500; ++u) EXPECT_GE(a.community_set(u).size(), 1u);
  EXPECT_EQ(a, random_initial_assignment(g, cfg, 3));
  EXPECT_FALSE(a == random_initial_assignment(g, cfg, 4));
}

TEST(ProposeMoveTest, FullMatrixOnlyDeletes) {
  Affiliation a(5, 3);
  for (NodeId u = 0; u < 5; ++u) {
    for (CommunityId c = 0; c < 3; ++c) a.add_membership(u, c);
  }
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    MembershipMove m = propose_move(a, rng);
    EXPECT_EQ(m.kind, MoveKind::kDelete);
    EXPECT_NO_THROW(check_move(a, m));
  }
}

TEST(ProposeMoveTest, EmptyMatrixOnlyAdds) {
  Affiliation a(5, 3);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    MembershipMove m = propose_move(a, rng);
    EXPECT_EQ(m.kind, MoveKind::kAdd);
    EXPECT_NO_THROW(check_move(a, m));
  }
}

TEST(ProposeMoveTest, NoLegalMove) {
  Affiliation a(0, 3);
  Rng rng(1);
  EXPECT_THROW(propose_move(a, rng), ProposalExhaustedError);
}

TEST(ProposeMoveTest, KindsAreUniform) {
  std::mt19937_64 gen(5);
  Affiliation a = testing::random_affiliation(30, 5, 0.4, gen);
  Rng rng(9);
  std::array<std::uint64_t, 3> counts{};
  const std::uint64_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i) {
    MembershipMove m = propose_move(a, rng);
    ++counts[static_cast<int>(m.kind)];
  }
  for (auto c : counts) EXPECT_TRUE(within_3_sigma(c, n, 1.0 / 3.0));
}

TEST(ProposeMoveTest, DeleteIsUniformOverMemberships) {
  // A sparse matrix forces the indexed path, a dense one the rejection path.
  for (double fill : {0.005, 0.5}) {
    std::mt19937_64 gen(6);
    Affiliation a = testing::random_affiliation(200, 20, fill, gen);
    ASSERT_GT(a.membership_count(), 5u);
    Rng rng(2);
    std::map<std::pair<NodeId, CommunityId>, std::uint64_t> seen;
    std::uint64_t deletes = 0;
    while (deletes < 60000) {
      MembershipMove m = propose_move(a, rng);
      if (m.kind != MoveKind::kDelete) continue;
      ++deletes;
      ++seen[{m.node, *m.remove_comm}];
    }
    EXPECT_EQ(seen.size(), a.membership_count());
    double expected = static_cast<double>(deletes) / a.membership_count();
    double chi2 = 0.0;
    for (NodeId u = 0; u < a.node_count(); ++u) {
      for (CommunityId c : a.community_set(u)) {
        double o = static_cast<double>(seen[{u, c}]);
        chi2 += (o - expected) * (o - expected) / expected;
      }
    }
    // Degrees of freedom m - 1; mean m - 1, sd sqrt(2(m - 1)).
    double dof = static_cast<double>(a.membership_count() - 1);
    EXPECT_LT(chi2, dof + 5.0 * std::sqrt(2.0 * dof)) << "fill " << fill;
  }
}

TEST(AcceptMoveTest, NonNegativeDeltaAlwaysAccepted) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(accept_move(0.0, rng));
    EXPECT_TRUE(accept_move(3.5, rng));
  }
}

TEST(AcceptMoveTest, ImpossibleMoveNeverAccepted) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(accept_move(-std::numeric_limits<double>::infinity(), rng));
  }
}

TEST(AcceptMoveTest, ScriptedDeltasFollowExp) {
  const std::array<double, 5> script = {-0.1, -0.7, -1.5, -3.0, -0.01};
  std::array<std::uint64_t, 5> hits{};
  const std::uint64_t rounds = 40000;
  Rng rng(17);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    for (std::size_t i = 0; i < script.size(); ++i) hits[i] += accept_move(script[i], rng);
  }
  for (std::size_t i = 0; i < script.size(); ++i) {
    EXPECT_TRUE(within_3_sigma(hits[i], rounds, std::exp(script[i]))) << script[i];
  }
}

struct Planted {
  Affiliation truth;
  Graph graph;
};

Planted two_disjoint_communities(std::uint64_t seed) {
  Affiliation truth = make_planted_affiliation({PairwiseOverlap{2, 20, 0}});
  Graph g = sample_jag_graph(truth, {0.9, 1e-8}, seed);
  return {truth, g};
}

TEST(ChainTest, BookkeepingMatchesRecomputation) {
  Planted p = two_disjoint_communities(4);
  for (std::size_t k : {1u, 50u, 7u}) {
    McmcConfig cfg = small_config(3);
    cfg.alpha_refit_interval = k;
    Chain chain(p.graph, random_initial_assignment(p.graph, cfg, 1), cfg, 2);
    for (int i = 0; i < 3000; ++i) chain.step();
    EXPECT_TRUE(chain.affiliation().is_consistent());
    double recomputed = chain.recomputed_log_likelihood();
    EXPECT_NEAR(chain.log_likelihood(), recomputed, 1e-6 * std::abs(recomputed)) << k;
  }
}

TEST(ChainTest, ProfileModeScoresMaxAlphaDifference) {
  Planted p = two_disjoint_communities(8);
  McmcConfig cfg = small_config(2);
  cfg.alpha_refit_interval = 1;
  Chain chain(p.graph, random_initial_assignment(p.graph, cfg, 5), cfg, 6);
  for (int i = 0; i < 200; ++i) {
    Affiliation before = chain.affiliation();
    double before_fit = fit_alpha(p.graph, before, cfg.grid, cfg.epsilon).log_likelihood;
    EXPECT_NEAR(chain.log_likelihood(), before_fit, 1e-8 * std::abs(before_fit));
    StepOutcome step = chain.step();
    if (step.accepted) {
      double after_fit =
          fit_alpha(p.graph, chain.affiliation(), cfg.grid, cfg.epsilon).log_likelihood;
      EXPECT_NEAR(step.delta, after_fit - before_fit, 1e-7 * std::abs(after_fit));
    }
  }
}

TEST(ChainTest, StartingFromTruthNeverEndsBelowIt) {
  Planted p = two_disjoint_communities(12);
  McmcConfig cfg = small_config(2);
  Chain chain(p.graph, p.truth, cfg, 3);
  double start = chain.log_likelihood();
  double best = start;
  for (int i = 0; i < 2000; ++i) {
    chain.step();
    best = std::max(best, chain.log_likelihood());
  }
  EXPECT_GE(best, start);
}

TEST(DetectTest, RecoversTwoDisjointCommunities) {
  Planted p = two_disjoint_communities(21);
  DetectionResult r = detect_communities(p.graph, small_config(2));
  double f1 = f1_score(p.truth.to_cover(true), r.best_affiliation.to_cover(true));
  EXPECT_GE(f1, 0.95);
  EXPECT_NEAR(r.best_log_likelihood,
              log_likelihood(p.graph, r.best_affiliation, {r.alpha_hat, kDefaultEpsilon}),
              1e-6 * std::abs(r.best_log_likelihood));
  for (const auto& chain : r.chains) {
    for (std::size_t i = 1; i < chain.trace.size(); ++i) {
      ASSERT_GE(chain.trace[i].best_log_likelihood, chain.trace[i - 1].best_log_likelihood);
    }
    EXPECT_LE(chain.best_fit.log_likelihood, r.best_log_likelihood);
    EXPECT_NEAR(chain.tracked_log_likelihood, chain.recomputed_log_likelihood,
                1e-6 * std::abs(chain.recomputed_log_likelihood));
  }
}

TEST(DetectTest, SingleCommunityAbsorbsEveryNode) {
  std::mt19937_64 gen(2);
  Graph g = testing::random_graph(30, 0.3, gen);
  for (NodeId u = 0; u < 30; ++u) ASSERT_GT(g.degree(u), 0u);
  McmcConfig cfg = small_config(1);
  cfg.restarts = 2;
  DetectionResult r = detect_communities(g, cfg);
  EXPECT_EQ(r.best_affiliation.members(0).size(), 30u);
  double density = static_cast<double>(g.edge_count()) / (30.0 * 29.0 / 2.0);
  EXPECT_NEAR(r.alpha_hat, density, 0.01);
}

TEST(DetectTest, DeterministicAcrossRunsAndThreads) {
  Planted p = two_disjoint_communities(30);
  McmcConfig cfg = small_config(3);
  cfg.restarts = 3;
  DetectionResult a = detect_communities(p.graph, cfg);
  DetectionResult b = detect_communities(p.graph, cfg);
  cfg.threads = 3;
  DetectionResult c = detect_communities(p.graph, cfg);
  for (const DetectionResult* other : {&b, &c}) {
    EXPECT_EQ(a.best_affiliation, other->best_affiliation);
    EXPECT_EQ(a.alpha_hat, other->alpha_hat);
    EXPECT_EQ(a.best_log_likelihood, other->best_log_likelihood);
    EXPECT_EQ(a.restart_index, other->restart_index);
    ASSERT_EQ(a.trace.size(), other->trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(a.trace[i].log_likelihood, other->trace[i].log_likelihood);
      EXPECT_EQ(a.trace[i].accepted, other->trace[i].accepted);
    }
  }
}

TEST(DetectTest, RejectsEmptyGraphAndBadConfig) {
  McmcConfig cfg = small_config(2);
  EXPECT_THROW(detect_communities(Graph(0), cfg), ArgumentError);
  cfg.community_count = 0;
  EXPECT_THROW(detect_communities(Graph(3), cfg), ArgumentError);
}

}  // namespace
}  // namespace jag
