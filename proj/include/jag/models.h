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

#ifndef JAG_MODELS_H_
#define JAG_MODELS_H_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "jag/graph.h"
#include "jag/move.h"

namespace jag {

inline constexpr double kDefaultEpsilon = 1e-8;

// JAG parameters. The background probability epsilon is composed with the
// Jaccard term by noisy-OR, so pairs sharing no community still connect with
// probability epsilon and the log-likelihood stays finite.
struct ModelParams {
  double alpha = 0.5;
  double epsilon = kDefaultEpsilon;

  void validate() const;
};

struct AgmParams {
  std::vector<double> per_community_prob;
  double epsilon = 0.0;

  void validate(std::size_t community_count) const;
};

// 1 - (1 - alpha*J)(1 - epsilon), evaluated so that epsilon = 0 yields
// alpha*J exactly.
inline double jag_prob(double jaccard, double alpha, double epsilon) {
  double base = alpha * jaccard;
  return base + epsilon * (1.0 - base);
}

double jag_edge_prob(const Affiliation& a, const ModelParams& params, NodeId u,
                     NodeId v);
double agm_edge_prob(const Affiliation& a, const AgmParams& params, NodeId u,
                     NodeId v);

// Log of the per-pair likelihood factor.
double pair_log_term(double jaccard, bool edge, double alpha, double epsilon);

// A Jaccard value kept as a reduced fraction so that equal similarities
// share one likelihood class.
struct JaccardClass {
  std::uint32_t shared = 0;
  std::uint32_t combined = 1;

  static JaccardClass of(std::size_t shared, std::size_t combined);
  double value() const { return static_cast<double>(shared) / combined; }

  friend auto operator<=>(const JaccardClass&, const JaccardClass&) = default;
};

struct PairCounts {
  std::int64_t edges = 0;
  std::int64_t non_edges = 0;
};

using ClassHistogram = std::map<JaccardClass, PairCounts>;

// Sum of count * term over a histogram. Counts may be negative (deltas);
// infinite terms are netted by count so that -inf - (-inf) never yields NaN.
double histogram_log_likelihood(const ClassHistogram& h, double alpha,
                                double epsilon);

// Grid over the admissible alpha range. With refine_step > 0 the search is
// two-stage: the coarse argmax is re-searched within +-step at refine_step.
struct GridSpec {
  double step = 0.01;
  double lower = 0.0;
  double upper = 1.0;
  double refine_step = 0.0;

  static GridSpec two_stage() { return {0.05, 0.0, 1.0, 0.005}; }
  void validate() const;
  std::vector<double> points() const;
};

struct AlphaFit {
  double alpha = 0.0;
  double log_likelihood = 0.0;
};

// The sufficient statistic of the JAG likelihood for a fixed assignment:
// every node pair falls into one Jaccard class and is either an edge or not.
// Only pairs sharing a community are enumerated; all other pairs are
// counted in closed form in the J = 0 class.
class LikelihoodProfile {
 public:
  static LikelihoodProfile build(const Graph& g, const Affiliation& a);

  double log_likelihood(double alpha, double epsilon) const {
    return histogram_log_likelihood(classes_, alpha, epsilon);
  }

  AlphaFit fit_alpha(const GridSpec& grid, double epsilon) const;

  // Profile of the assignment after a move with the given class delta.
  AlphaFit fit_alpha_with(const ClassHistogram& delta, const GridSpec& grid,
                          double epsilon) const;

  void merge(const ClassHistogram& delta);

  const ClassHistogram& classes() const { return classes_; }
  std::int64_t total_pairs() const { return total_pairs_; }

 private:
  ClassHistogram classes_;
  std::int64_t total_pairs_ = 0;
};

double log_likelihood(const Graph& g, const Affiliation& a,
                      const ModelParams& params);

AlphaFit fit_alpha(const Graph& g, const Affiliation& a, const GridSpec& grid,
                   double epsilon = kDefaultEpsilon);

// Evaluates how the pair-class histogram changes under a single-node move.
// Only pairs (u, w) with w in a community of S_u or the added community can
// change their Jaccard value; everything else cancels. Holds O(n) scratch
// so a chain can reuse one instance across proposals.
class DeltaEvaluator {
 public:
  explicit DeltaEvaluator(std::size_t node_count = 0);

  ClassHistogram evaluate(const Graph& g, const Affiliation& a,
                          const MembershipMove& move);

 private:
  std::uint32_t next_epoch();

  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> neighbor_;
  std::uint32_t epoch_ = 0;
  std::vector<CommunityId> new_set_;
};

// L(A') - L(A) at fixed params, with A' = A after `move`.
double log_likelihood_delta(const Graph& g, const Affiliation& a,
                            const ModelParams& params,
                            const MembershipMove& move);

}  // namespace jag

#endif  // JAG_MODELS_H_
