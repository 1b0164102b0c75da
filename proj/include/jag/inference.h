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

#ifndef JAG_INFERENCE_H_
#define JAG_INFERENCE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "jag/graph.h"
#include "jag/models.h"
#include "jag/move.h"

namespace jag {

using Rng = std::mt19937_64;

struct McmcConfig {
  std::size_t community_count = 0;
  std::size_t max_iters = 100000;
  // Proposals without a strict improvement of the chain's best before the
  // chain stops.
  std::size_t patience = 2000;
  std::size_t restarts = 1;
  // Candidate moves per step; the one with the largest delta is tested.
  std::size_t proposals_per_step = 1;
  // Refit alpha every K accepted moves. K = 1 switches to the exact profile
  // rule: every proposal is scored by max_alpha L(A') - max_alpha L(A).
  std::size_t alpha_refit_interval = 50;
  GridSpec grid{};
  double init_membership_prob = 0.2;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
  // Chains run concurrently on up to this many threads; 0 means hardware.
  std::size_t threads = 1;
  bool record_trace = true;

  void validate() const;
  bool profile_mode() const { return alpha_refit_interval == 1; }
};

struct TraceEntry {
  double log_likelihood = 0.0;
  double best_log_likelihood = 0.0;
  bool accepted = false;
  MoveKind kind = MoveKind::kAdd;
};

struct StepOutcome {
  bool accepted = false;
  double delta = 0.0;
  MoveKind kind = MoveKind::kAdd;
};

struct ChainSummary {
  std::size_t restart = 0;
  std::size_t iterations = 0;
  std::size_t accepted = 0;
  // Grid fit of the chain's best assignment.
  AlphaFit best_fit;
  // Incremental bookkeeping at the end of the run and the same quantity
  // recomputed from scratch.
  double tracked_log_likelihood = 0.0;
  double recomputed_log_likelihood = 0.0;
  std::vector<TraceEntry> trace;
};

struct DetectionResult {
  Affiliation best_affiliation;
  double alpha_hat = 0.0;
  double best_log_likelihood = 0.0;
  std::size_t restart_index = 0;
  std::size_t iterations = 0;
  double acceptance_rate = 0.0;
  std::vector<TraceEntry> trace;
  std::vector<ChainSummary> chains;
};

// Independent Bernoulli(init_membership_prob) memberships; nodes left
// without any community join one uniformly random community.
Affiliation random_initial_assignment(const Graph& g, const McmcConfig& cfg,
                                      std::uint64_t seed);

// Kind uniform over {delete, add, switch}, redrawn while illegal.
//   delete: uniform over (v, c) in M
//   add:    uniform over (v, c) not in M
//   switch: uniform node admitting a switch, then uniform current and
//           uniform non-current community
// Throws ProposalExhaustedError when no kind is legal.
MembershipMove propose_move(const Affiliation& a, Rng& rng);

// Accept when delta >= 0, otherwise with probability exp(delta). Draws from
// `rng` only in the latter case.
bool accept_move(double delta, Rng& rng);

// One Markov chain owning its assignment, the pair-class profile of that
// assignment, and the current alpha.
class Chain {
 public:
  Chain(const Graph& g, Affiliation initial, const McmcConfig& cfg,
        std::uint64_t seed);

  StepOutcome step();

  const Affiliation& affiliation() const { return affiliation_; }
  double alpha() const { return alpha_; }
  // Bookkeeping value of log L(A) at the current alpha.
  double log_likelihood() const { return log_likelihood_; }
  double recomputed_log_likelihood() const;
  std::size_t accepted() const { return accepted_; }

 private:
  void refit();

  const Graph& graph_;
  McmcConfig cfg_;
  Affiliation affiliation_;
  LikelihoodProfile profile_;
  DeltaEvaluator evaluator_;
  Rng rng_;
  double alpha_ = 0.0;
  double log_likelihood_ = 0.0;
  std::size_t accepted_ = 0;
};

ChainSummary run_chain(const Graph& g, const McmcConfig& cfg, std::size_t restart,
                       Affiliation* best_out);

// R independent chains from distinct random starts; the winner maximizes
// the grid-fitted likelihood of its best assignment, ties to the lowest
// restart index.
DetectionResult detect_communities(const Graph& g, const McmcConfig& cfg);

// Per-restart seeds derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t purpose);

}  // namespace jag

#endif  // JAG_INFERENCE_H_
