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

#ifndef JAG_MOVE_H_
#define JAG_MOVE_H_

#include <optional>
#include <string_view>

#include "jag/graph.h"

namespace jag {

enum class MoveKind { kDelete, kAdd, kSwitch };

std::string_view to_string(MoveKind kind);

// One mutation of the membership matrix, always touching a single node.
//   Delete: drop remove_comm (a current membership).
//   Add:    join add_comm (not a current membership).
//   Switch: drop remove_comm and join add_comm.
struct MembershipMove {
  MoveKind kind = MoveKind::kAdd;
  NodeId node = 0;
  std::optional<CommunityId> remove_comm;
  std::optional<CommunityId> add_comm;

  static MembershipMove remove(NodeId u, CommunityId c) {
    return {MoveKind::kDelete, u, c, std::nullopt};
  }
  static MembershipMove add(NodeId u, CommunityId c) {
    return {MoveKind::kAdd, u, std::nullopt, c};
  }
  static MembershipMove swap(NodeId u, CommunityId from, CommunityId to) {
    return {MoveKind::kSwitch, u, from, to};
  }

  friend bool operator==(const MembershipMove&, const MembershipMove&) = default;
};

// Throws ArgumentError unless `move` is legal against `a`.
void check_move(const Affiliation& a, const MembershipMove& move);

void apply_move(Affiliation& a, const MembershipMove& move);
void revert_move(Affiliation& a, const MembershipMove& move);

}  // namespace jag

#endif  // JAG_MOVE_H_
