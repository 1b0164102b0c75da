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

#ifndef JAG_IO_H_
#define JAG_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jag/graph.h"
#include "jag/inference.h"
#include "jag/validate.h"
#include "json.hpp"

namespace jag {

// Bidirectional map between external node labels and dense ids, assigned
// in first-appearance order. Shared by edge lists and community files so
// that graphs and covers line up.
class LabelDictionary {
 public:
  static LabelDictionary identity(std::size_t n);

  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

// How community-file labels missing from the dictionary are handled.
enum class LabelPolicy {
  kStrict,   // error
  kLenient,  // skip the label, and the community if nothing is left
  kExtend,   // add the label as a new node
};

struct EdgeListData {
  Graph graph;
  LabelDictionary labels;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

// Two whitespace-separated labels per line; '#' lines and blank lines are
// ignored. Self-loops and duplicates are dropped and counted.
EdgeListData parse_edge_list(std::istream& in, const std::string& source = "<stream>");
EdgeListData parse_edge_list(const std::filesystem::path& path);

struct CommunityParseStats {
  std::size_t skipped_labels = 0;
  std::size_t dropped_communities = 0;
};

// One community per line, whitespace-separated member labels.
Cover parse_communities(std::istream& in, LabelDictionary& dict, LabelPolicy policy,
                        CommunityParseStats* stats = nullptr,
                        const std::string& source = "<stream>");
Cover parse_community_file(const std::filesystem::path& path, LabelDictionary& dict,
                           LabelPolicy policy = LabelPolicy::kStrict,
                           CommunityParseStats* stats = nullptr);

// Writes via a temporary file in the same directory and renames it over
// `path`, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string format_edge_list(const Graph& g, const LabelDictionary& dict);
// Empty communities are skipped.
std::string format_communities(const Cover& cover, const LabelDictionary& dict);

void write_edge_list(const Graph& g, const LabelDictionary& dict,
                     const std::filesystem::path& path);
void write_community_file(const Cover& cover, const LabelDictionary& dict,
                          const std::filesystem::path& path);

struct SubnetSamplerConfig {
  std::size_t k = 2;
  std::size_t count = 500;
  std::uint64_t seed = 1;
  // Restricted communities smaller than this are dropped.
  std::size_t min_community_size = 2;

  void validate() const;
};

struct Subnetwork {
  NodeId seed_node = 0;
  // Local id -> id in the parent graph, ascending.
  std::vector<NodeId> to_parent;
  Graph graph;
  Cover cover;
};

// Ego-community subnetworks: a uniform seed node with at least k
// memberships, every node sharing a community with it, the induced
// subgraph, and the ground truth restricted to those nodes. Communities
// that do not contain the seed but reach into the node set are kept.
std::vector<Subnetwork> sample_subnetworks(const Graph& g, const Cover& cover,
                                           const SubnetSamplerConfig& cfg);

nlohmann::json to_json(const GridSpec& grid);
nlohmann::json to_json(const McmcConfig& cfg);
nlohmann::json run_report(const DetectionResult& result, const McmcConfig& cfg);

// Writes communities.txt (original labels) and report.json to `out_dir`.
void write_detection_result(const DetectionResult& result, const LabelDictionary& dict,
                            const McmcConfig& cfg, const std::filesystem::path& out_dir);

std::string binning_csv(const BinningReport& report);
nlohmann::json to_json(const BinningReport& report);
std::string isolated_csv(const IsolatedCommunityReport& report);
nlohmann::json to_json(const IsolatedCommunityReport& report);

std::string format_double(double x);

}  // namespace jag

#endif  // JAG_IO_H_
