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

#ifndef JAG_METRICS_H_
#define JAG_METRICS_H_

#include <cstddef>
#include <optional>

#include "jag/graph.h"

namespace jag {

// Sorts each set and removes duplicate sets and duplicate members; the
// order of the returned sets is canonical. Throws ArgumentError on an empty
// set.
Cover normalize_cover(const Cover& cover);

// Symmetric best-match F1: the mean of (a) the average over truth sets of
// their best F1 against any detected set and (b) the same with the roles
// swapped.
double f1_score(const Cover& truth, const Cover& detected);

struct OmegaFraction {
  __int128 num = 0;
  __int128 den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Omega index with exact integer bookkeeping: pairs agree when both covers
// put them together equally often; chance agreement sums products of the
// per-level pair counts. The node universe is {0, ..., universe_size - 1}
// plus every node named in either cover. nullopt when chance agreement is
// total and the covers still disagree.
std::optional<OmegaFraction> omega_index_exact(const Cover& truth, const Cover& detected,
                                               std::size_t universe_size = 0);

std::optional<double> omega_index(const Cover& truth, const Cover& detected,
                                  std::size_t universe_size = 0);

// Overlapping NMI on binary membership vectors, with the usual
// admissibility rule for matching a community to its best counterpart.
// Universe as for omega_index.
double overlapping_nmi(const Cover& truth, const Cover& detected,
                       std::size_t universe_size = 0);

}  // namespace jag

#endif  // JAG_METRICS_H_
