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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "jag/errors.h"

namespace jag {

namespace {

// Below this fill ratio rejection sampling of a cell is replaced by an
// indexed scan.
constexpr double kRejectionFloor = 1.0 / 64.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
T uniform_index(T n, Rng& rng) {
  return std::uniform_int_distribution<T>(0, n - 1)(rng);
}

// Uniform (node, community) cell with membership == `present`.
std::pair<NodeId, CommunityId> sample_cell(const Affiliation& a, bool present,
                                           Rng& rng) {
  const std::size_t n = a.node_count();
  const std::size_t k = a.community_count();
  const std::size_t cells = n * k;
  const std::size_t matching = present ? a.membership_count() : cells - a.membership_count();
  if (static_cast<double>(matching) >= kRejectionFloor * static_cast<double>(cells)) {
    for (;;) {
      auto u = static_cast<NodeId>(uniform_index(n, rng));
      auto c = static_cast<CommunityId>(uniform_index(k, rng));
      if (a.contains(u, c) == present) return {u, c};
    }
  }
  std::size_t target = uniform_index(matching, rng);
  for (NodeId u = 0; u < n; ++u) {
    auto s = a.community_set(u);
    std::size_t here = present ? s.size() : k - s.size();
    if (target >= here) {
      target -= here;
      continue;
    }
    if (present) return {u, s[target]};
    for (CommunityId c = 0; c < k; ++c) {
      if (std::binary_search(s.begin(), s.end(), c)) continue;
      if (target-- == 0) return {u, c};
    }
  }
  throw ProposalExhaustedError("membership index out of sync");
}

NodeId sample_switchable_node(const Affiliation& a, Rng& rng) {
  const std::size_t n = a.node_count();
  const std::size_t k = a.community_count();
  auto ok = [&](NodeId u) {
    auto size = a.community_set(u).size();
    return size > 0 && size < k;
  };
  if (static_cast<double>(a.switchable_node_count()) >= kRejectionFloor * n) {
    for (;;) {
      auto u = static_cast<NodeId>(uniform_index(n, rng));
      if (ok(u)) return u;
    }
  }
  std::size_t target = uniform_index(a.switchable_node_count(), rng);
  for (NodeId u = 0; u < n; ++u) {
    if (ok(u) && target-- == 0) return u;
  }
  throw ProposalExhaustedError("switchable node count out of sync");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t purpose) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ purpose);
}

void McmcConfig::validate() const {
  if (community_count < 1) throw ArgumentError("community count must be positive");
  if (max_iters < 1 || patience < 1 || restarts < 1 || proposals_per_step < 1 ||
      alpha_refit_interval < 1) {
    throw ArgumentError("MCMC counts must be positive");
  }
  if (!(init_membership_prob > 0.0 && init_membership_prob < 1.0)) {
    throw ArgumentError("init_membership_prob must lie in (0,1)");
  }
  ModelParams{0.0, epsilon}.validate();
  grid.validate();
}

Affiliation random_initial_assignment(const Graph& g, const McmcConfig& cfg,
                                      std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  std::bernoulli_distribution join(cfg.init_membership_prob);
  Affiliation a(g.node_count(), cfg.community_count);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (CommunityId c = 0; c < cfg.community_count; ++c) {
      if (join(rng)) a.add_membership(u, c);
    }
    if (a.community_set(u).empty()) {
      a.add_membership(u, static_cast<CommunityId>(uniform_index(cfg.community_count, rng)));
    }
  }
  return a;
}

MembershipMove propose_move(const Affiliation& a, Rng& rng) {
  const std::size_t cells = a.node_count() * a.community_count();
  const bool can_delete = a.membership_count() > 0;
  const bool can_add = a.membership_count() < cells;
  const bool can_switch = a.switchable_node_count() > 0;
  if (!can_delete && !can_add && !can_switch) {
    throw ProposalExhaustedError("no legal membership move exists");
  }
  std::uniform_int_distribution<int> kind(0, 2);
  for (;;) {
    switch (kind(rng)) {
      case 0:
        if (can_delete) {
          auto [u, c] = sample_cell(a, true, rng);
          return MembershipMove::remove(u, c);
        }
        break;
      case 1:
        if (can_add) {
          auto [u, c] = sample_cell(a, false, rng);
          return MembershipMove::add(u, c);
        }
        break;
      default:
        if (can_switch) {
          NodeId u = sample_switchable_node(a, rng);
          auto s = a.community_set(u);
          CommunityId from = s[uniform_index(s.size(), rng)];
          std::size_t target = uniform_index(a.community_count() - s.size(), rng);
          CommunityId to = 0;
          for (CommunityId c = 0; c < a.community_count(); ++c) {
            if (std::binary_search(s.begin(), s.end(), c)) continue;
            if (target-- == 0) {
              to = c;
              break;
            }
          }
          return MembershipMove::swap(u, from, to);
        }
        break;
    }
  }
}

bool accept_move(double delta, Rng& rng) {
  if (delta >= 0.0) return true;
  if (std::isnan(delta) || delta == -std::numeric_limits<double>::infinity()) {
    return false;
  }
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(delta);
}

// ---------------------------------------------------------------------------

Chain::Chain(const Graph& g, Affiliation initial, const McmcConfig& cfg,
             std::uint64_t seed)
    : graph_(g),
      cfg_(cfg),
      affiliation_(std::move(initial)),
      profile_(LikelihoodProfile::build(g, affiliation_)),
      evaluator_(g.node_count()),
      rng_(seed) {
  cfg_.validate();
  if (affiliation_.community_count() != cfg_.community_count) {
    throw ArgumentError("initial assignment has the wrong community count");
  }
  refit();
}

void Chain::refit() {
  AlphaFit fit = profile_.fit_alpha(cfg_.grid, cfg_.epsilon);
  alpha_ = fit.alpha;
  log_likelihood_ = fit.log_likelihood;
}

double Chain::recomputed_log_likelihood() const {
  return jag::log_likelihood(graph_, affiliation_, {alpha_, cfg_.epsilon});
}

StepOutcome Chain::step() {
  MembershipMove best_move;
  ClassHistogram best_delta_classes;
  AlphaFit best_profile_fit;
  double best_delta = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < cfg_.proposals_per_step; ++b) {
    MembershipMove move = propose_move(affiliation_, rng_);
    ClassHistogram classes = evaluator_.evaluate(graph_, affiliation_, move);
    double delta;
    AlphaFit fit;
    if (cfg_.profile_mode()) {
      fit = profile_.fit_alpha_with(classes, cfg_.grid, cfg_.epsilon);
      delta = fit.log_likelihood - log_likelihood_;
      if (std::isinf(fit.log_likelihood) && std::isinf(log_likelihood_)) {
        delta = fit.log_likelihood == log_likelihood_ ? 0.0 : fit.log_likelihood;
      }
    } else {
      delta = histogram_log_likelihood(classes, alpha_, cfg_.epsilon);
    }
    if (b == 0 || delta > best_delta) {
      best_delta = delta;
      best_move = move;
      best_delta_classes = std::move(classes);
      best_profile_fit = fit;
    }
  }

  StepOutcome out{accept_move(best_delta, rng_), best_delta, best_move.kind};
  if (!out.accepted) return out;

  apply_move(affiliation_, best_move);
  profile_.merge(best_delta_classes);
  ++accepted_;
  if (cfg_.profile_mode()) {
    alpha_ = best_profile_fit.alpha;
    log_likelihood_ = best_profile_fit.log_likelihood;
  } else if (accepted_ % cfg_.alpha_refit_interval == 0) {
    refit();
  } else if (std::isfinite(best_delta) && std::isfinite(log_likelihood_)) {
    log_likelihood_ += best_delta;
  } else {
    log_likelihood_ = profile_.log_likelihood(alpha_, cfg_.epsilon);
  }
  return out;
}

ChainSummary run_chain(const Graph& g, const McmcConfig& cfg, std::size_t restart,
                       Affiliation* best_out) {
  Chain chain(g, random_initial_assignment(g, cfg, derive_seed(cfg.seed, restart, 0)),
              cfg, derive_seed(cfg.seed, restart, 1));
  ChainSummary summary;
  summary.restart = restart;
  Affiliation best = chain.affiliation();
  double best_ll = chain.log_likelihood();
  std::size_t stale = 0;
  if (cfg.record_trace) summary.trace.reserve(std::min<std::size_t>(cfg.max_iters, 1 << 16));
  while (summary.iterations < cfg.max_iters && stale < cfg.patience) {
    StepOutcome step = chain.step();
    ++summary.iterations;
    if (chain.log_likelihood() > best_ll) {
      best_ll = chain.log_likelihood();
      best = chain.affiliation();
      stale = 0;
    } else {
      ++stale;
    }
    if (cfg.record_trace) {
      summary.trace.push_back({chain.log_likelihood(), best_ll, step.accepted, step.kind});
    }
  }
  summary.accepted = chain.accepted();
  summary.tracked_log_likelihood = chain.log_likelihood();
  summary.recomputed_log_likelihood = chain.recomputed_log_likelihood();
  summary.best_fit = LikelihoodProfile::build(g, best).fit_alpha(cfg.grid, cfg.epsilon);
  if (best_out) *best_out = std::move(best);
  return summary;
}

DetectionResult detect_communities(const Graph& g, const McmcConfig& cfg) {
  cfg.validate();
  if (g.node_count() == 0) throw ArgumentError("cannot detect communities in an empty graph");

  std::vector<ChainSummary> summaries(cfg.restarts);
  std::vector<Affiliation> bests(cfg.restarts);
  std::size_t workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  workers = std::clamp<std::size_t>(workers, 1, cfg.restarts);
  if (workers == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      summaries[r] = run_chain(g, cfg, r, &bests[r]);
    }
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t r = w; r < cfg.restarts; r += workers) {
              summaries[r] = run_chain(g, cfg, r, &bests[r]);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t winner = 0;
  for (std::size_t r = 1; r < cfg.restarts; ++r) {
    if (summaries[r].best_fit.log_likelihood > summaries[winner].best_fit.log_likelihood) {
      winner = r;
    }
  }
  DetectionResult result;
  result.best_affiliation = std::move(bests[winner]);
  result.alpha_hat = summaries[winner].best_fit.alpha;
  result.best_log_likelihood = summaries[winner].best_fit.log_likelihood;
  result.restart_index = winner;
  result.iterations = summaries[winner].iterations;
  result.acceptance_rate =
      summaries[winner].iterations == 0
          ? 0.0
          : static_cast<double>(summaries[winner].accepted) / summaries[winner].iterations;
  result.trace = summaries[winner].trace;
  result.chains = std::move(summaries);
  return result;
}

}  // namespace jag
