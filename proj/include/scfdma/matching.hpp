// Copyright 2026 The scfdma-minpower Authors
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

#pragma once

#include <limits>
#include <vector>

#include "scfdma/model.hpp"

namespace scfdma {

// Weights of the user x sub-block-position bipartite graph. Row i, column v
// carries the weight of assigning user i (0-indexed) to position v+1; pairs
// with mask false are absent from the graph, not large-negative sentinels.
struct WeightMatrix {
  int size = 0;              // M
  std::vector<double> w;     // row-major M x M, finite exactly where masked
  std::vector<char> mask;    // feasible (user, position) pairs

  explicit WeightMatrix(int m = 0)
      : size(m),
        w(static_cast<std::size_t>(m) * m,
          -std::numeric_limits<double>::infinity()),
        mask(static_cast<std::size_t>(m) * m, 0) {}

  double weight(int row, int col) const {
    return w[static_cast<std::size_t>(row) * size + col];
  }
  bool allowed(int row, int col) const {
    return mask[static_cast<std::size_t>(row) * size + col] != 0;
  }
  void set(int row, int col, double value) {
    w[static_cast<std::size_t>(row) * size + col] = value;
    mask[static_cast<std::size_t>(row) * size + col] = 1;
  }
};

struct MatchingResult {
  bool feasible = false;
  // match[i] = 0-indexed column assigned to row i; a bijection iff feasible.
  std::vector<int> match;
  // Sum of matched weights, accumulated over rows in ascending order.
  double total_weight = 0.0;
  // Dual variables certifying optimality: row_duals[i] + col_duals[j] >=
  // w[i][j] on every allowed pair, with equality on matched pairs. Empty for
  // the brute-force solver and on infeasible instances.
  std::vector<double> row_duals;
  std::vector<double> col_duals;
};

// Maximum-weight perfect matching restricted to allowed pairs, O(M^3)
// shortest-augmenting-path Hungarian method with potentials and slack
// arrays. If no perfect matching exists within the allowed pairs, returns
// feasible = false; the solver never routes through a masked-off pair.
// Ties between optimal assignments are broken by the deterministic scan
// order (ascending row, ascending column).
MatchingResult kuhn_munkres(const WeightMatrix& weights);

// Testing oracle: exhaustive scan over all M! permutations. Refuses M > 9
// with SolverGuardError.
MatchingResult brute_force_matching(const WeightMatrix& weights);

}  // namespace scfdma
