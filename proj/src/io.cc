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

#include "jag/io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "jag/errors.h"

namespace jag {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

LabelDictionary LabelDictionary::identity(std::size_t n) {
  LabelDictionary d;
  for (std::size_t i = 0; i < n; ++i) d.intern(std::to_string(i));
  return d;
}

NodeId LabelDictionary::intern(std::string_view label) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

std::optional<NodeId> LabelDictionary::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

EdgeListData parse_edge_list(std::istream& in, const std::string& source) {
  EdgeListData data;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) {
      throw ParseError(source, line_no,
                       "expected 2 labels, found " + std::to_string(tokens.size()));
    }
    NodeId u = data.labels.intern(tokens[0]);
    NodeId v = data.labels.intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  Graph::BuildStats stats;
  data.graph = Graph::from_edges(data.labels.size(), edges, &stats);
  data.self_loops = stats.self_loops;
  data.duplicates = stats.duplicates;
  return data;
}

EdgeListData parse_edge_list(const fs::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string());
}

Cover parse_communities(std::istream& in, LabelDictionary& dict, LabelPolicy policy,
                        CommunityParseStats* stats, const std::string& source) {
  CommunityParseStats local;
  Cover cover;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    std::vector<NodeId> members;
    members.reserve(tokens.size());
    for (auto label : tokens) {
      if (policy == LabelPolicy::kExtend) {
        members.push_back(dict.intern(label));
        continue;
      }
      auto id = dict.find(label);
      if (id) {
        members.push_back(*id);
      } else if (policy == LabelPolicy::kStrict) {
        throw InputError(source + ":" + std::to_string(line_no) + ": unknown node label '" +
                         std::string(label) + "'");
      } else {
        ++local.skipped_labels;
      }
    }
    if (members.empty()) {
      ++local.dropped_communities;
      continue;
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    cover.push_back(std::move(members));
  }
  if (stats) *stats = local;
  return cover;
}

Cover parse_community_file(const fs::path& path, LabelDictionary& dict,
                           LabelPolicy policy, CommunityParseStats* stats) {
  auto in = open_input(path);
  return parse_communities(in, dict, policy, stats, path.string());
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                     ec.message());
  }
}

std::string format_edge_list(const Graph& g, const LabelDictionary& dict) {
  std::string out;
  for (auto [u, v] : g.edges()) {
    out += dict.label(u);
    out += '\t';
    out += dict.label(v);
    out += '\n';
  }
  return out;
}

std::string format_communities(const Cover& cover, const LabelDictionary& dict) {
  std::string out;
  for (const auto& members : cover) {
    if (members.empty()) continue;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out += '\t';
      out += dict.label(members[i]);
    }
    out += '\n';
  }
  return out;
}

void write_edge_list(const Graph& g, const LabelDictionary& dict, const fs::path& path) {
  write_file_atomic(path, format_edge_list(g, dict));
}

void write_community_file(const Cover& cover, const LabelDictionary& dict,
                          const fs::path& path) {
  write_file_atomic(path, format_communities(cover, dict));
}

// ---------------------------------------------------------------------------

void SubnetSamplerConfig::validate() const {
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (count < 1) throw ArgumentError("subnetwork count must be at least 1");
}

std::vector<Subnetwork> sample_subnetworks(const Graph& g, const Cover& cover,
                                           const SubnetSamplerConfig& cfg) {
  cfg.validate();
  Affiliation a = Affiliation::from_cover(g.node_count(), cover);
  std::vector<NodeId> seeds;
  for (NodeId u = 0; u < a.node_count(); ++u) {
    if (a.community_set(u).size() >= cfg.k) seeds.push_back(u);
  }
  if (seeds.empty()) {
    throw SamplingExhaustedError(
        "no node belongs to at least " + std::to_string(cfg.k) + " communities", 0);
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.node_count(), kAbsent);
  std::vector<Subnetwork> out;
  out.reserve(cfg.count);
  for (std::size_t s = 0; s < cfg.count; ++s) {
    Subnetwork sub;
    sub.seed_node = seeds[pick(rng)];
    for (CommunityId c : a.community_set(sub.seed_node)) {
      auto m = a.members(c);
      sub.to_parent.insert(sub.to_parent.end(), m.begin(), m.end());
    }
    std::sort(sub.to_parent.begin(), sub.to_parent.end());
    sub.to_parent.erase(std::unique(sub.to_parent.begin(), sub.to_parent.end()),
                        sub.to_parent.end());
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
      local[sub.to_parent[i]] = static_cast<NodeId>(i);
    }
    sub.graph = g.induced_subgraph(sub.to_parent);

    std::map<CommunityId, std::vector<NodeId>> restricted;
    for (NodeId u : sub.to_parent) {
      for (CommunityId c : a.community_set(u)) restricted[c].push_back(local[u]);
    }
    for (auto& [c, members] : restricted) {
      if (members.size() >= cfg.min_community_size) sub.cover.push_back(std::move(members));
    }
    for (NodeId u : sub.to_parent) local[u] = kAbsent;
    out.push_back(std::move(sub));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

nlohmann::json to_json(const GridSpec& grid) {
  return {{"step", grid.step},
          {"lower", grid.lower},
          {"upper", grid.upper},
          {"refine_step", grid.refine_step}};
}

nlohmann::json to_json(const McmcConfig& cfg) {
  return {{"num_communities", cfg.community_count},
          {"max_iters", cfg.max_iters},
          {"patience", cfg.patience},
          {"restarts", cfg.restarts},
          {"batch", cfg.proposals_per_step},
          {"alpha_refit", cfg.alpha_refit_interval},
          {"grid", to_json(cfg.grid)},
          {"init_prob", cfg.init_membership_prob},
          {"epsilon", cfg.epsilon},
          {"seed", cfg.seed}};
}

nlohmann::json run_report(const DetectionResult& result, const McmcConfig& cfg) {
  return {{"alpha_hat", result.alpha_hat},
          {"log_likelihood", result.best_log_likelihood},
          {"iterations", result.iterations},
          {"acceptance_rate", result.acceptance_rate},
          {"restarts", cfg.restarts},
          {"seed", cfg.seed},
          {"config", to_json(cfg)}};
}

void write_detection_result(const DetectionResult& result, const LabelDictionary& dict,
                            const McmcConfig& cfg, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create " + out_dir.string() + ": " + ec.message());
  write_community_file(result.best_affiliation.to_cover(true), dict,
                       out_dir / "communities.txt");
  write_file_atomic(out_dir / "report.json", run_report(result, cfg).dump(2) + "\n");
}

std::string binning_csv(const BinningReport& r) {
  std::ostringstream out;
  out << "bin,lower,upper,pairs,edges,p_edge,mean_jaccard,low_count\n";
  for (std::size_t i = 0; i < r.bins(); ++i) {
    out << i << ',' << format_double(r.bin_edges[i]) << ','
        << format_double(r.bin_edges[i + 1]) << ',' << r.pair_count[i] << ','
        << r.edge_count[i] << ',' << format_double(r.p_edge[i]) << ','
        << format_double(r.mean_jaccard[i]) << ',' << (r.low_count[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const BinningReport& r) {
  std::vector<bool> low(r.low_count.begin(), r.low_count.end());
  return {{"bins", r.bins()},
          {"total_pairs", r.total_pairs()},
          {"fitted_slope", r.fitted_slope},
          {"fit_residual", r.fit_residual},
          {"bin_edges", r.bin_edges},
          {"pair_count", r.pair_count},
          {"edge_count", r.edge_count},
          {"p_edge", r.p_edge},
          {"mean_jaccard", r.mean_jaccard},
          {"low_count", low}};
}

std::string isolated_csv(const IsolatedCommunityReport& r) {
  std::ostringstream out;
  out << "community,size,internal_edges,density\n";
  for (std::size_t i = 0; i < r.communities.size(); ++i) {
    out << r.communities[i] << ',' << r.sizes[i] << ',' << r.internal_edges[i] << ','
        << format_double(r.densities[i]) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const IsolatedCommunityReport& r) {
  nlohmann::json j = {{"communities", r.communities},
                      {"sizes", r.sizes},
                      {"internal_edges", r.internal_edges},
                      {"densities", r.densities},
                      {"mean", r.mean},
                      {"std", r.stddev}};
  j["alpha"] = r.comparison_alpha ? nlohmann::json(*r.comparison_alpha) : nlohmann::json();
  return j;
}

}  // namespace jag
