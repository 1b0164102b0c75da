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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "jag/errors.h"

namespace jag {

namespace {

using Matrix = std::vector<std::vector<std::uint32_t>>;

// overlap[i][j] = |x[i] ∩ y[j]|.
Matrix overlap_matrix(const Cover& x, const Cover& y) {
  std::unordered_map<NodeId, std::vector<std::uint32_t>> in_y;
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (NodeId u : y[j]) in_y[u].push_back(static_cast<std::uint32_t>(j));
  }
  Matrix m(x.size(), std::vector<std::uint32_t>(y.size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (NodeId u : x[i]) {
      auto it = in_y.find(u);
      if (it == in_y.end()) continue;
      for (auto j : it->second) ++m[i][j];
    }
  }
  return m;
}

std::size_t universe_count(const Cover& x, const Cover& y, std::size_t universe_size) {
  std::vector<NodeId> extra;
  for (const Cover* c : {&x, &y}) {
    for (const auto& s : *c) {
      for (NodeId u : s) {
        if (u >= universe_size) extra.push_back(u);
      }
    }
  }
  std::sort(extra.begin(), extra.end());
  return universe_size + static_cast<std::size_t>(
                             std::unique(extra.begin(), extra.end()) - extra.begin());
}

std::unordered_map<std::uint64_t, std::uint32_t> pair_levels(const Cover& cover) {
  std::unordered_map<std::uint64_t, std::uint32_t> levels;
  for (const auto& s : cover) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        ++levels[(static_cast<std::uint64_t>(s[i]) << 32) | s[j]];
      }
    }
  }
  return levels;
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double binary_entropy(double p) { return entropy_term(p) + entropy_term(1.0 - p); }

// Average over x of the normalized H(X_k | Y).
double normalized_conditional(const Cover& x, const Cover& y, const Matrix& overlap,
                              bool transposed, double n) {
  double total = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double a = static_cast<double>(x[k].size());
    double hx = binary_entropy(a / n);
    if (hx == 0.0) continue;  // a set spanning the universe carries no information
    double best = hx;
    for (std::size_t l = 0; l < y.size(); ++l) {
      double b = static_cast<double>(y[l].size());
      double c = transposed ? overlap[l][k] : overlap[k][l];
      double p11 = c / n;
      double p10 = (a - c) / n;
      double p01 = (b - c) / n;
      double p00 = (n - a - b + c) / n;
      if (entropy_term(p11) + entropy_term(p00) <= entropy_term(p01) + entropy_term(p10)) {
        continue;
      }
      double joint = entropy_term(p11) + entropy_term(p10) + entropy_term(p01) +
                     entropy_term(p00);
      best = std::min(best, joint - binary_entropy(b / n));
    }
    total += best / hx;
  }
  return total / static_cast<double>(x.size());
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Cover normalize_cover(const Cover& cover) {
  Cover out;
  out.reserve(cover.size());
  for (const auto& s : cover) {
    if (s.empty()) throw ArgumentError("covers may not contain empty communities");
    auto& t = out.emplace_back(s);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double f1_score(const Cover& truth_in, const Cover& detected_in) {
  if (truth_in.empty() || detected_in.empty()) {
    throw ArgumentError("F1 needs two non-empty covers");
  }
  Cover truth = normalize_cover(truth_in);
  Cover detected = normalize_cover(detected_in);
  Matrix overlap = overlap_matrix(truth, detected);
  auto pair_f1 = [&](std::size_t i, std::size_t j) {
    return 2.0 * overlap[i][j] / static_cast<double>(truth[i].size() + detected[j].size());
  };
  double truth_side = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < detected.size(); ++j) best = std::max(best, pair_f1(i, j));
    truth_side += best;
  }
  double detected_side = 0.0;
  for (std::size_t j = 0; j < detected.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) best = std::max(best, pair_f1(i, j));
    detected_side += best;
  }
  return 0.5 * (truth_side / truth.size() + detected_side / detected.size());
}

std::optional<OmegaFraction> omega_index_exact(const Cover& truth_in,
                                               const Cover& detected_in,
                                               std::size_t universe_size) {
  Cover truth = normalize_cover(truth_in);
  Cover detected = normalize_cover(detected_in);
  const __int128 n = universe_count(truth, detected, universe_size);
  const __int128 pairs = n * (n - 1) / 2;

  auto t_levels = pair_levels(truth);
  auto s_levels = pair_levels(detected);

  std::unordered_map<std::uint32_t, __int128> t_hist;
  std::unordered_map<std::uint32_t, __int128> s_hist;
  for (const auto& [key, level] : t_levels) ++t_hist[level];
  for (const auto& [key, level] : s_levels) ++s_hist[level];
  t_hist[0] += pairs - static_cast<__int128>(t_levels.size());
  s_hist[0] += pairs - static_cast<__int128>(s_levels.size());

  __int128 agree = 0;
  std::size_t union_keys = s_levels.size();
  for (const auto& [key, level] : t_levels) {
    auto it = s_levels.find(key);
    if (it == s_levels.end()) {
      ++union_keys;
    } else if (it->second == level) {
      ++agree;
    }
  }
  agree += pairs - static_cast<__int128>(union_keys);

  __int128 expected = 0;  // scaled by pairs^2
  for (const auto& [level, count] : t_hist) {
    auto it = s_hist.find(level);
    if (it != s_hist.end()) expected += count * it->second;
  }

  __int128 num = agree * pairs - expected;
  __int128 den = pairs * pairs - expected;
  if (den == 0) {
    if (agree == pairs) return OmegaFraction{1, 1};
    return std::nullopt;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return OmegaFraction{num, den};
}

std::optional<double> omega_index(const Cover& truth, const Cover& detected,
                                  std::size_t universe_size) {
  auto exact = omega_index_exact(truth, detected, universe_size);
  if (!exact) return std::nullopt;
  return exact->value();
}

double overlapping_nmi(const Cover& truth_in, const Cover& detected_in,
                       std::size_t universe_size) {
  if (truth_in.empty() || detected_in.empty()) {
    throw ArgumentError("NMI needs two non-empty covers");
  }
  Cover truth = normalize_cover(truth_in);
  Cover detected = normalize_cover(detected_in);
  const double n = static_cast<double>(universe_count(truth, detected, universe_size));
  Matrix overlap = overlap_matrix(truth, detected);
  double x_given_y = normalized_conditional(truth, detected, overlap, false, n);
  double y_given_x = normalized_conditional(detected, truth, overlap, true, n);
  return 1.0 - 0.5 * (x_given_y + y_given_x);
}

}  // namespace jag
