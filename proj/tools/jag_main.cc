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

// Command-line front end: generation, detection, validation experiments,
// scoring and subnetwork sampling.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jag/errors.h"
#include "jag/generator.h"
#include "jag/graph.h"
#include "jag/inference.h"
#include "jag/io.h"
#include "jag/metrics.h"
#include "jag/models.h"
#include "jag/validate.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitRuntime = 4,
};

bool g_quiet = false;

void info(const std::string& msg) {
  if (!g_quiet) std::cerr << msg << '\n';
}

std::size_t default_threads() {
  const char* env = std::getenv("JAG_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0') throw jag::ArgumentError("JAG_THREADS must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

// Echo of every option of a subcommand, passed or defaulted.
json flag_echo(const CLI::App& sub) {
  json flags = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help") continue;
    if (opt->count() == 0) {
      flags[name] = opt->get_default_str();
    } else if (opt->get_expected_max() == 0) {
      flags[name] = true;
    } else if (opt->results().size() == 1) {
      flags[name] = opt->results().front();
    } else {
      flags[name] = opt->results();
    }
  }
  return flags;
}

void write_json(const fs::path& path, const json& j) {
  jag::write_file_atomic(path, j.dump(2) + "\n");
}

void write_provenance(const fs::path& out, const std::string& command, const CLI::App& sub,
                      std::uint64_t seed, json extra = json::object()) {
  json p = {{"command", command},
            {"version", kVersion},
            {"seed", seed},
            {"flags", flag_echo(sub)}};
  for (auto& [k, v] : extra.items()) p[k] = v;
  write_json(out / "provenance.json", p);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw jag::InputError("cannot create " + dir.string() + ": " + ec.message());
}

jag::LabelPolicy parse_policy(const std::string& s) {
  if (s == "strict") return jag::LabelPolicy::kStrict;
  if (s == "lenient") return jag::LabelPolicy::kLenient;
  return jag::LabelPolicy::kExtend;
}

struct Dataset {
  jag::Graph graph;
  jag::LabelDictionary labels;
  jag::Cover cover;
};

// Graph plus ground truth over one shared label dictionary. Labels added
// by the community file become isolated nodes.
Dataset load_dataset(const fs::path& graph_path, const fs::path& truth_path,
                     const std::string& policy) {
  jag::EdgeListData data = jag::parse_edge_list(graph_path);
  Dataset d{std::move(data.graph), std::move(data.labels), {}};
  jag::CommunityParseStats stats;
  d.cover = jag::parse_community_file(truth_path, d.labels, parse_policy(policy), &stats);
  if (d.labels.size() > d.graph.node_count()) {
    info("added " + std::to_string(d.labels.size() - d.graph.node_count()) +
         " nodes without edges from " + truth_path.string());
    d.graph = d.graph.with_node_count(d.labels.size());
  }
  if (stats.skipped_labels > 0) {
    info("skipped " + std::to_string(stats.skipped_labels) + " unknown labels, dropped " +
         std::to_string(stats.dropped_communities) + " communities");
  }
  return d;
}

std::string optional_number(std::optional<double> v) {
  return v ? jag::format_double(*v) : std::string("nan");
}

json optional_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// generate -------------------------------------------------------------------

struct GenerateOptions {
  std::string model = "jag";
  std::string layout = "overlap";
  std::string truth;
  std::size_t nodes = 0;
  std::size_t communities = 3;
  std::size_t min_memberships = 1;
  std::size_t max_memberships = 1;
  std::size_t community_size = 30;
  std::size_t overlap = 5;
  std::size_t isolated = 0;
  std::size_t isolated_size = 0;
  double alpha = 0.5;
  double epsilon = jag::kDefaultEpsilon;
  double community_prob = 0.5;
  std::size_t rounds = 100;
  double meet_prob = 0.01;
  std::uint64_t seed = 1;
  std::string out;
};

void add_generate(CLI::App& app, GenerateOptions& o) {
  auto* sub = app.add_subcommand("generate", "Sample a planted affiliation and a graph");
  sub->add_option("--model", o.model, "jag, agm or process")
      ->check(CLI::IsMember({"jag", "agm", "process"}));
  sub->add_option("--layout", o.layout, "random, overlap or file")
      ->check(CLI::IsMember({"random", "overlap", "file"}));
  sub->add_option("--truth", o.truth, "Community file for --layout file");
  sub->add_option("--nodes", o.nodes, "Node count for --layout random");
  sub->add_option("--communities", o.communities, "Community count");
  sub->add_option("--min-memberships", o.min_memberships);
  sub->add_option("--max-memberships", o.max_memberships);
  sub->add_option("--community-size", o.community_size, "Members per community (overlap)");
  sub->add_option("--overlap", o.overlap, "Nodes shared by each pair of communities");
  sub->add_option("--isolated", o.isolated, "Extra communities on otherwise unused nodes");
  sub->add_option("--isolated-size", o.isolated_size);
  sub->add_option("--alpha", o.alpha, "Edge scale for the jag model")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--epsilon", o.epsilon, "Background edge probability")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--community-prob", o.community_prob, "Per-community probability (agm)")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--rounds", o.rounds, "Rounds of the event process");
  sub->add_option("--meet-prob", o.meet_prob, "Meeting probability per round")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--seed", o.seed);
  sub->add_option("--out", o.out, "Output directory")->required();
}

int run_generate(const GenerateOptions& o, const CLI::App& sub) {
  jag::PlantedConfig planted;
  jag::LabelDictionary labels;
  if (o.layout == "random") {
    planted.layout = jag::RandomMemberships{o.nodes, o.communities, o.min_memberships,
                                            o.max_memberships};
  } else if (o.layout == "overlap") {
    planted.layout = jag::PairwiseOverlap{o.communities, o.community_size, o.overlap};
  } else {
    if (o.truth.empty()) throw jag::ArgumentError("--layout file needs --truth");
    jag::Cover cover = jag::parse_community_file(o.truth, labels, jag::LabelPolicy::kExtend);
    planted.layout = jag::ExplicitMemberships{labels.size(), cover};
  }
  planted.isolated_communities = o.isolated;
  planted.isolated_size = o.isolated_size;
  planted.seed = jag::derive_seed(o.seed, 0, 0);
  jag::Affiliation a = jag::make_planted_affiliation(planted);
  for (std::size_t i = labels.size(); i < a.node_count(); ++i) {
    labels.intern(std::to_string(i));
  }

  const std::uint64_t graph_seed = jag::derive_seed(o.seed, 0, 1);
  jag::Graph g;
  std::optional<jag::ProcessResult> process;
  if (o.model == "jag") {
    jag::ModelParams params{o.alpha, o.epsilon};
    params.validate();
    g = jag::sample_jag_graph(a, params, graph_seed);
  } else if (o.model == "agm") {
    jag::AgmParams params{std::vector<double>(a.community_count(), o.community_prob),
                          o.epsilon};
    g = jag::sample_agm_graph(a, params, graph_seed);
  } else {
    process = jag::simulate_event_process(a, {o.rounds, o.meet_prob, graph_seed});
    g = process->graph;
  }

  fs::path out(o.out);
  ensure_dir(out);
  jag::write_edge_list(g, labels, out / "graph.txt");
  jag::write_community_file(a.to_cover(true), labels, out / "communities.txt");
  if (process) {
    std::string csv = "u,v,count\n";
    for (const auto& t : process->coattendance) {
      csv += labels.label(t.u) + "," + labels.label(t.v) + "," + std::to_string(t.count) + "\n";
    }
    jag::write_file_atomic(out / "coattendance.csv", csv);
  }
  write_provenance(out, "generate", sub, o.seed,
                   {{"nodes", g.node_count()},
                    {"edges", g.edge_count()},
                    {"communities", a.community_count()}});
  info("generated " + std::to_string(g.node_count()) + " nodes, " +
       std::to_string(g.edge_count()) + " edges, " + std::to_string(a.community_count()) +
       " communities in " + out.string());
  return kExitOk;
}

// detect ---------------------------------------------------------------------

struct McmcOptions {
  std::size_t num_communities = 0;
  std::size_t restarts = 1;
  std::size_t max_iters = 100000;
  std::size_t patience = 2000;
  std::size_t batch = 1;
  std::size_t alpha_refit = 50;
  double grid_step = 0.01;
  double grid_refine = 0.0;
  double init_prob = 0.2;
  double epsilon = jag::kDefaultEpsilon;
  std::size_t threads = 1;
};

void add_mcmc_options(CLI::App* sub, McmcOptions& o, bool require_communities) {
  auto* k = sub->add_option("--num-communities", o.num_communities, "Number of communities");
  if (require_communities) k->required();
  sub->add_option("--restarts", o.restarts, "Independent chains");
  sub->add_option("--max-iters", o.max_iters, "Proposal cap per chain");
  sub->add_option("--patience", o.patience, "Proposals without improvement before stopping");
  sub->add_option("--batch", o.batch, "Candidate moves per step");
  sub->add_option("--alpha-refit", o.alpha_refit, "Accepted moves between alpha refits");
  sub->add_option("--grid-step", o.grid_step, "Alpha grid step");
  sub->add_option("--grid-refine", o.grid_refine, "Second-stage grid step, 0 for none");
  sub->add_option("--init-prob", o.init_prob, "Initial membership probability");
  sub->add_option("--epsilon", o.epsilon, "Background edge probability");
  sub->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
}

jag::McmcConfig to_config(const McmcOptions& o, std::uint64_t seed) {
  jag::McmcConfig cfg;
  cfg.community_count = o.num_communities;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.patience = o.patience;
  cfg.proposals_per_step = o.batch;
  cfg.alpha_refit_interval = o.alpha_refit;
  cfg.grid.step = o.grid_step;
  cfg.grid.refine_step = o.grid_refine;
  cfg.init_membership_prob = o.init_prob;
  cfg.epsilon = o.epsilon;
  cfg.seed = seed;
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

struct DetectOptions {
  std::string graph;
  McmcOptions mcmc;
  std::uint64_t seed = 1;
  bool trace = false;
  std::string out;
};

void add_detect(CLI::App& app, DetectOptions& o) {
  auto* sub = app.add_subcommand("detect", "Fit the model to a graph");
  sub->add_option("--graph", o.graph, "Edge list")->required();
  add_mcmc_options(sub, o.mcmc, true);
  sub->add_option("--seed", o.seed);
  sub->add_flag("--trace", o.trace, "Also write the winning chain's trace.csv");
  sub->add_option("--out", o.out, "Output directory")->required();
}

int run_detect(const DetectOptions& o, const CLI::App& sub) {
  jag::McmcConfig cfg = to_config(o.mcmc, o.seed);
  jag::EdgeListData data = jag::parse_edge_list(o.graph);
  info("read " + std::to_string(data.graph.node_count()) + " nodes, " +
       std::to_string(data.graph.edge_count()) + " edges");
  cfg.record_trace = o.trace;
  jag::DetectionResult r = jag::detect_communities(data.graph, cfg);

  fs::path out(o.out);
  ensure_dir(out);
  jag::write_detection_result(r, data.labels, cfg, out);
  if (o.trace) {
    std::string csv = "step,log_likelihood,best_log_likelihood,accepted,move\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& t = r.trace[i];
      csv += std::to_string(i) + "," + jag::format_double(t.log_likelihood) + "," +
             jag::format_double(t.best_log_likelihood) + "," + (t.accepted ? "1" : "0") + "," +
             std::string(jag::to_string(t.kind)) + "\n";
    }
    jag::write_file_atomic(out / "trace.csv", csv);
  }
  write_provenance(out, "detect", sub, o.seed, {{"mcmc", jag::to_json(cfg)}});
  info("alpha " + jag::format_double(r.alpha_hat) + ", log-likelihood " +
       jag::format_double(r.best_log_likelihood) + ", restart " +
       std::to_string(r.restart_index));
  return kExitOk;
}

// validate -------------------------------------------------------------------

struct BinsOptions {
  std::string graph;
  std::string truth;
  std::string labels = "strict";
  std::string pairs = "uniform";
  std::vector<std::size_t> fixed;
  std::size_t n_pairs = 100000;
  std::size_t max_attempts = jag::kDefaultRejectionBudget;
  std::size_t bins = 10;
  std::size_t min_bin_count = 30;
  std::uint64_t seed = 1;
  std::string out;
};

struct IsolatedOptions {
  std::string graph;
  std::string truth;
  std::string labels = "strict";
  std::size_t min_size = 5;
  std::size_t max_count = 5;
  std::optional<double> alpha;
  std::uint64_t seed = 1;
  std::string out;
};

void add_dataset_options(CLI::App* sub, std::string& graph, std::string& truth,
                         std::string& labels) {
  sub->add_option("--graph", graph, "Edge list")->required();
  sub->add_option("--truth", truth, "Ground-truth community file")->required();
  sub->add_option("--labels", labels, "Unknown community labels: strict, lenient or extend")
      ->check(CLI::IsMember({"strict", "lenient", "extend"}));
}

void add_validate(CLI::App& app, BinsOptions& b, IsolatedOptions& iso) {
  auto* v = app.add_subcommand("validate", "Edge probability versus community overlap");
  v->require_subcommand(1);

  auto* bins = v->add_subcommand("bins", "Edge frequency per Jaccard bin");
  add_dataset_options(bins, b.graph, b.truth, b.labels);
  bins->add_option("--pairs", b.pairs, "uniform or constrained")
      ->check(CLI::IsMember({"uniform", "constrained"}));
  bins->add_option("--fixed", b.fixed,
                   "Community indices (0-based lines of --truth) for constrained pairs")
      ->delimiter(',');
  bins->add_option("--n-pairs", b.n_pairs, "Pairs to sample");
  bins->add_option("--max-attempts", b.max_attempts, "Rejection budget");
  bins->add_option("--bins", b.bins, "Equal-width bins on [0,1]");
  bins->add_option("--min-bin-count", b.min_bin_count, "Flag bins with fewer pairs");
  bins->add_option("--seed", b.seed);
  bins->add_option("--out", b.out, "Output directory")->required();

  auto* isolated = v->add_subcommand("isolated", "Internal density of isolated communities");
  add_dataset_options(isolated, iso.graph, iso.truth, iso.labels);
  isolated->add_option("--min-size", iso.min_size, "Smallest community considered");
  isolated->add_option("--max-count", iso.max_count, "Communities to sample");
  isolated->add_option("--alpha", iso.alpha, "Value to compare the mean density with")
      ->check(CLI::Range(0.0, 1.0));
  isolated->add_option("--seed", iso.seed);
  isolated->add_option("--out", iso.out, "Output directory")->required();
}

int run_bins(const BinsOptions& o, const CLI::App& sub) {
  Dataset d = load_dataset(o.graph, o.truth, o.labels);
  jag::Affiliation a = jag::Affiliation::from_cover(d.graph.node_count(), d.cover);
  std::vector<jag::NodePair> pairs;
  if (o.pairs == "uniform") {
    pairs = jag::sample_uniform_pairs(d.graph.node_count(), o.n_pairs, o.seed);
  } else {
    if (o.fixed.empty()) throw jag::ArgumentError("--pairs constrained needs --fixed");
    std::vector<jag::CommunityId> fixed;
    for (std::size_t c : o.fixed) {
      if (c >= a.community_count()) {
        throw jag::ArgumentError("--fixed index " + std::to_string(c) + " out of range");
      }
      fixed.push_back(static_cast<jag::CommunityId>(c));
    }
    pairs = jag::sample_constrained_pairs(a, fixed, o.n_pairs, o.seed, o.max_attempts);
  }
  jag::BinningReport r = jag::binning_experiment(d.graph, a, pairs, {o.bins, o.min_bin_count});

  fs::path out(o.out);
  ensure_dir(out);
  jag::write_file_atomic(out / "bins.csv", jag::binning_csv(r));
  write_json(out / "summary.json", jag::to_json(r));
  write_provenance(out, "validate bins", sub, o.seed);
  info("slope " + jag::format_double(r.fitted_slope) + " over " +
       std::to_string(r.total_pairs()) + " pairs");
  return kExitOk;
}

int run_isolated(const IsolatedOptions& o, const CLI::App& sub) {
  Dataset d = load_dataset(o.graph, o.truth, o.labels);
  jag::Affiliation a = jag::Affiliation::from_cover(d.graph.node_count(), d.cover);
  auto r = jag::isolated_density_experiment(d.graph, a,
                                            {o.min_size, o.max_count, o.seed, o.alpha});
  if (!r) {
    throw jag::SamplingExhaustedError("no isolated community with at least " +
                                          std::to_string(o.min_size) + " members",
                                      0);
  }
  fs::path out(o.out);
  ensure_dir(out);
  jag::write_file_atomic(out / "isolated.csv", jag::isolated_csv(*r));
  write_json(out / "summary.json", jag::to_json(*r));
  write_provenance(out, "validate isolated", sub, o.seed);
  info("density " + jag::format_double(r->mean) + " +- " + jag::format_double(r->stddev) +
       " over " + std::to_string(r->communities.size()) + " communities");
  return kExitOk;
}

// score ----------------------------------------------------------------------

struct ScoreOptions {
  std::string truth;
  std::string detected;
  std::string graph;
  std::string out;
};

void add_score(CLI::App& app, ScoreOptions& o) {
  auto* sub = app.add_subcommand("score", "Compare two covers; prints {f1, nmi, omega}");
  sub->add_option("--truth", o.truth, "Reference community file")->required();
  sub->add_option("--detected", o.detected, "Detected community file")->required();
  sub->add_option("--graph", o.graph, "Edge list whose nodes join the universe");
  sub->add_option("--out", o.out, "Also write score.json and provenance.json here");
}

json score_covers(const jag::Cover& truth, const jag::Cover& detected, std::size_t universe) {
  return {{"f1", jag::f1_score(truth, detected)},
          {"nmi", jag::overlapping_nmi(truth, detected, universe)},
          {"omega", optional_json(jag::omega_index(truth, detected, universe))}};
}

int run_score(const ScoreOptions& o, const CLI::App& sub) {
  jag::LabelDictionary dict;
  if (!o.graph.empty()) dict = jag::parse_edge_list(o.graph).labels;
  jag::Cover truth = jag::parse_community_file(o.truth, dict, jag::LabelPolicy::kExtend);
  jag::Cover detected = jag::parse_community_file(o.detected, dict, jag::LabelPolicy::kExtend);
  json s = score_covers(truth, detected, dict.size());
  std::cout << s.dump() << std::endl;
  if (!o.out.empty()) {
    fs::path out(o.out);
    ensure_dir(out);
    write_json(out / "score.json", s);
    write_provenance(out, "score", sub, 0);
  }
  return kExitOk;
}

// sample-subnets and replicate -----------------------------------------------

struct SubnetOptions {
  std::string graph;
  std::string truth;
  std::string labels = "strict";
  std::size_t k = 2;
  std::size_t count = 500;
  std::size_t min_community_size = 2;
  std::uint64_t seed = 1;
  std::string out;
};

void add_subnet_options(CLI::App* sub, SubnetOptions& o) {
  add_dataset_options(sub, o.graph, o.truth, o.labels);
  sub->add_option("--k", o.k, "Minimum memberships of a seed node");
  sub->add_option("--count", o.count, "Number of subnetworks");
  sub->add_option("--min-community-size", o.min_community_size,
                  "Drop restricted communities smaller than this");
  sub->add_option("--seed", o.seed);
  sub->add_option("--out", o.out, "Output directory")->required();
}

std::vector<jag::Subnetwork> load_subnets(const SubnetOptions& o, Dataset& d) {
  d = load_dataset(o.graph, o.truth, o.labels);
  jag::SubnetSamplerConfig cfg{o.k, o.count, o.seed, o.min_community_size};
  return jag::sample_subnetworks(d.graph, d.cover, cfg);
}

std::string subnet_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "subnet_%03zu", i);
  return buf;
}

jag::LabelDictionary local_labels(const jag::Subnetwork& sub, const jag::LabelDictionary& parent) {
  jag::LabelDictionary dict;
  for (jag::NodeId u : sub.to_parent) dict.intern(parent.label(u));
  return dict;
}

int run_sample_subnets(const SubnetOptions& o, const CLI::App& sub) {
  Dataset d;
  auto subs = load_subnets(o, d);
  fs::path out(o.out);
  ensure_dir(out);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    fs::path dir = out / subnet_name(i);
    ensure_dir(dir);
    jag::LabelDictionary dict = local_labels(subs[i], d.labels);
    jag::write_edge_list(subs[i].graph, dict, dir / "graph.txt");
    jag::write_community_file(subs[i].cover, dict, dir / "communities.txt");
    std::string csv = "local,label\n";
    for (std::size_t u = 0; u < subs[i].to_parent.size(); ++u) {
      csv += std::to_string(u) + "," + dict.label(static_cast<jag::NodeId>(u)) + "\n";
    }
    jag::write_file_atomic(dir / "mapping.csv", csv);
  }
  write_provenance(out, "sample-subnets", sub, o.seed);
  info("wrote " + std::to_string(subs.size()) + " subnetworks to " + out.string());
  return kExitOk;
}

struct ReplicateOptions {
  SubnetOptions subnets;
  McmcOptions mcmc;
};

void add_replicate(CLI::App& app, ReplicateOptions& o) {
  auto* sub = app.add_subcommand(
      "replicate", "Sample subnetworks, detect on each, score against the truth, average");
  add_subnet_options(sub, o.subnets);
  add_mcmc_options(sub, o.mcmc, false);
}

json mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {{"mean", nullptr}, {"std", nullptr}, {"n", 0}};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return {{"mean", mean}, {"std", sd}, {"n", xs.size()}};
}

int run_replicate(const ReplicateOptions& o, const CLI::App& sub) {
  Dataset d;
  auto subs = load_subnets(o.subnets, d);
  fs::path out(o.subnets.out);
  ensure_dir(out);
  std::vector<double> f1, nmi, omega;
  std::string csv = "subnet,seed_node,nodes,edges,communities,f1,nmi,omega\n";
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& s = subs[i];
    if (s.cover.empty()) {
      info(subnet_name(i) + ": no community survives restriction, skipped");
      continue;
    }
    McmcOptions m = o.mcmc;
    if (m.num_communities == 0) m.num_communities = s.cover.size();
    jag::McmcConfig cfg = to_config(m, jag::derive_seed(o.subnets.seed, i, 2));
    cfg.record_trace = false;
    jag::DetectionResult r = jag::detect_communities(s.graph, cfg);
    jag::Cover detected = r.best_affiliation.to_cover(true);
    if (detected.empty()) {
      info(subnet_name(i) + ": detection returned no community, skipped");
      continue;
    }
    const std::size_t n = s.graph.node_count();
    double f = jag::f1_score(s.cover, detected);
    double v = jag::overlapping_nmi(s.cover, detected, n);
    auto w = jag::omega_index(s.cover, detected, n);
    f1.push_back(f);
    nmi.push_back(v);
    if (w) omega.push_back(*w);
    csv += subnet_name(i) + "," + d.labels.label(s.seed_node) + "," + std::to_string(n) + "," +
           std::to_string(s.graph.edge_count()) + "," + std::to_string(s.cover.size()) + "," +
           jag::format_double(f) + "," + jag::format_double(v) + "," + optional_number(w) +
           "\n";
  }
  jag::write_file_atomic(out / "replicate.csv", csv);
  json summary = {{"subnetworks", subs.size()},
                  {"scored", f1.size()},
                  {"f1", mean_std(f1)},
                  {"nmi", mean_std(nmi)},
                  {"omega", mean_std(omega)}};
  write_json(out / "summary.json", summary);
  write_provenance(out, "replicate", sub, o.subnets.seed);
  std::cout << summary.dump() << std::endl;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping community detection with a Jaccard affiliation model"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kVersion);
  app.add_flag("-q,--quiet", g_quiet, "Only print results");
  app.require_subcommand(1);

  std::size_t threads = 1;
  try {
    threads = default_threads();
  } catch (const jag::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  GenerateOptions gen;
  DetectOptions det;
  det.mcmc.threads = threads;
  BinsOptions bins;
  IsolatedOptions isolated;
  ScoreOptions score;
  SubnetOptions subnets;
  ReplicateOptions replicate;
  replicate.mcmc.threads = threads;
  add_generate(app, gen);
  add_detect(app, det);
  add_validate(app, bins, isolated);
  add_score(app, score);
  add_subnet_options(app.add_subcommand("sample-subnets", "Write ego-community subnetworks"),
                     subnets);
  add_replicate(app, replicate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (auto* s = app.get_subcommand("generate"); s->parsed()) return run_generate(gen, *s);
    if (auto* s = app.get_subcommand("detect"); s->parsed()) return run_detect(det, *s);
    if (auto* v = app.get_subcommand("validate"); v->parsed()) {
      if (auto* s = v->get_subcommand("bins"); s->parsed()) return run_bins(bins, *s);
      return run_isolated(isolated, *v->get_subcommand("isolated"));
    }
    if (auto* s = app.get_subcommand("score"); s->parsed()) return run_score(score, *s);
    if (auto* s = app.get_subcommand("sample-subnets"); s->parsed()) {
      return run_sample_subnets(subnets, *s);
    }
    return run_replicate(replicate, *app.get_subcommand("replicate"));
  } catch (const jag::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const jag::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const jag::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
