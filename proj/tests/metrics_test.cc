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

#include "jag/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "jag/errors.h"
#include "oracles.h"

namespace jag {
namespace {

Cover random_cover(std::size_t n, std::size_t sets, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution on(p);
  Cover c;
  while (c.size() < sets) {
    std::vector<NodeId> s;
    for (NodeId u = 0; u < n; ++u) {
      if (on(rng)) s.push_back(u);
    }
    if (!s.empty()) c.push_back(s);
  }
  return c;
}

Cover partition_cover(const std::vector<int>& labels) {
  int groups = *std::max_element(labels.begin(), labels.end()) + 1;
  Cover c(groups);
  for (std::size_t u = 0; u < labels.size(); ++u) c[labels[u]].push_back(static_cast<NodeId>(u));
  std::erase_if(c, [](const auto& s) { return s.empty(); });
  return c;
}

TEST(NormalizeCoverTest, SortsAndDeduplicates) {
  Cover c = {{3, 1, 1}, {2}, {1, 3}};
  EXPECT_EQ(normalize_cover(c), (Cover{{1, 3}, {2}}));
  EXPECT_THROW(normalize_cover({{1}, {}}), ArgumentError);
}

TEST(F1Test, Examples) {
  Cover truth = {{1, 2, 3, 4}, {5, 6}};
  EXPECT_DOUBLE_EQ(f1_score(truth, truth), 1.0);
  EXPECT_DOUBLE_EQ(f1_score(truth, {{7, 8}}), 0.0);
  EXPECT_DOUBLE_EQ(f1_score({{1, 2, 3, 4}}, {{1, 2, 3, 5}}), 0.75);
  EXPECT_THROW(f1_score({}, truth), ArgumentError);
  EXPECT_THROW(f1_score(truth, {}), ArgumentError);
}

TEST(OmegaTest, FourNodeExampleIsExact) {
  auto w = omega_index_exact({{0, 1}}, {{2, 3}});
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->num == -1 && w->den == 5);
  EXPECT_DOUBLE_EQ(*omega_index({{0, 1}}, {{2, 3}}), -0.2);
}

TEST(OmegaTest, IdenticalAndDegenerate) {
  Cover c = {{0, 1, 2}, {2, 3}};
  EXPECT_DOUBLE_EQ(*omega_index(c, c, 10), 1.0);
  // All pairs at level 1 in both covers: no chance correction possible.
  EXPECT_DOUBLE_EQ(*omega_index({{0, 1, 2}}, {{0, 1, 2}}), 1.0);
  // A single node has no pairs at all.
  EXPECT_DOUBLE_EQ(*omega_index({{0}}, {{0}}), 1.0);
}

TEST(OmegaTest, ComplementPairingIsNegative) {
  Cover truth = {{0, 1}, {2, 3}, {4, 5}};
  Cover detected = {{1, 2}, {3, 4}, {5, 0}};
  EXPECT_LT(*omega_index(truth, detected), 0.0);
}

TEST(OmegaTest, PartitionsReduceToAdjustedRand) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 4 + rng() % 20;
    int kx = 1 + static_cast<int>(rng() % 5);
    int ky = 1 + static_cast<int>(rng() % 5);
    std::vector<int> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<int>(rng() % kx);
      y[i] = static_cast<int>(rng() % ky);
    }
    auto w = omega_index(partition_cover(x), partition_cover(y), n);
    double ari = testing::brute_force_ari(x, y);
    if (!std::isfinite(ari)) continue;  // both partitions trivial
    ASSERT_TRUE(w.has_value());
    EXPECT_NEAR(*w, ari, 1e-12) << "trial " << trial;
  }
}

TEST(OmegaTest, UniverseCountsUncoveredNodes) {
  // With extra uncovered nodes the pairs they form agree at level 0.
  auto small = omega_index_exact({{0, 1}}, {{0, 1}, {2, 3}});
  auto large = omega_index_exact({{0, 1}}, {{0, 1}, {2, 3}}, 10);
  ASSERT_TRUE(small && large);
  EXPECT_LT(small->value(), large->value());
}

TEST(NmiTest, IdenticalCoversScoreOne) {
  Cover c = {{0, 1, 2, 3}, {3, 4, 5}, {6, 7}};
  EXPECT_NEAR(overlapping_nmi(c, c, 8), 1.0, 1e-12);
}

TEST(NmiTest, AllNodesCommunityLosesInformation) {
  Cover truth = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  Cover everything = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  double v = overlapping_nmi(truth, everything);
  EXPECT_LT(v, 1.0);
  EXPECT_GE(v, 0.0);
}

TEST(NmiTest, IndependentCoversScoreNearZero) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Cover a = random_cover(200, 6, 0.15, rng);
    Cover b = random_cover(200, 6, 0.15, rng);
    EXPECT_LT(overlapping_nmi(a, b, 200), 0.1);
  }
}

TEST(MetricsPropertyTest, SymmetryAndInvariance) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 5 + rng() % 25;
    Cover a = random_cover(n, 1 + rng() % 4, 0.3, rng);
    Cover b = random_cover(n, 1 + rng() % 4, 0.3, rng);
    Cover a_shuffled = a;
    a_shuffled.push_back(a.front());
    std::shuffle(a_shuffled.begin(), a_shuffled.end(), rng);
    for (auto& s : a_shuffled) std::shuffle(s.begin(), s.end(), rng);

    EXPECT_DOUBLE_EQ(f1_score(a, b), f1_score(b, a));
    EXPECT_DOUBLE_EQ(f1_score(a, b), f1_score(a_shuffled, b));
    EXPECT_NEAR(overlapping_nmi(a, b, n), overlapping_nmi(b, a, n), 1e-12);
    EXPECT_NEAR(overlapping_nmi(a, b, n), overlapping_nmi(a_shuffled, b, n), 1e-12);
    auto wab = omega_index_exact(a, b, n);
    auto wba = omega_index_exact(b, a, n);
    auto wsh = omega_index_exact(a_shuffled, b, n);
    ASSERT_EQ(wab.has_value(), wba.has_value());
    ASSERT_EQ(wab.has_value(), wsh.has_value());
    if (wab) {
      EXPECT_TRUE(wab->num == wba->num && wab->den == wba->den);
      EXPECT_TRUE(wab->num == wsh->num && wab->den == wsh->den);
      EXPECT_LE(wab->value(), 1.0);
    }
    double f1 = f1_score(a, b);
    EXPECT_GE(f1, 0.0);
    EXPECT_LE(f1, 1.0);
    EXPECT_DOUBLE_EQ(f1_score(a, a_shuffled), 1.0);
    EXPECT_NEAR(overlapping_nmi(a, a_shuffled, n), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace jag
