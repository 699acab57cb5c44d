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

#include "scfdma/matching.hpp"

#include <algorithm>
#include <numeric>

namespace scfdma {

namespace {

void check_shape(const WeightMatrix& wm) {
  const std::size_t want =
      static_cast<std::size_t>(wm.size) * static_cast<std::size_t>(wm.size);
  if (wm.size < 1 || wm.w.size() != want || wm.mask.size() != want) {
    throw std::invalid_argument("matching: weight matrix must be square M x M");
  }
}

double matched_weight_sum(const WeightMatrix& wm, const std::vector<int>& match) {
  double total = 0.0;
  for (int i = 0; i < wm.size; ++i) total += wm.weight(i, match[i]);
  return total;
}

}  // namespace

MatchingResult kuhn_munkres(const WeightMatrix& wm) {
  check_shape(wm);
  const int n = wm.size;
  const double inf = std::numeric_limits<double>::infinity();

  // Maximum weight becomes minimum cost; masked-off pairs have infinite cost
  // so an augmenting path can never cross them.
  auto cost = [&](int row, int col) {
    return wm.allowed(row, col) ? -wm.weight(row, col) : inf;
  };

  // Potentials u (rows), v (columns), 1-based with a virtual column 0.
  // Invariant: u[i] + v[j] <= cost(i, j) for every inserted row i and every
  // column j, with equality on matched pairs.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> matched_row(n + 1, 0);  // matched_row[j]: row on column j
  std::vector<int> way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    matched_row[0] = i;
    int j0 = 0;
    std::vector<double> slack(n + 1, inf);
    std::vector<char> visited(n + 1, 0);
    do {
      visited[j0] = 1;
      const int i0 = matched_row[j0];
      int j_next = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (visited[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          way[j] = j0;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          j_next = j;
        }
      }
      if (!(delta < inf)) {
        // The alternating tree has no finite edge out: the allowed pairs
        // admit no perfect matching.
        return MatchingResult{};
      }
      for (int j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[matched_row[j]] += delta;
          v[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      j0 = j_next;
    } while (matched_row[j0] != 0);
    // Unwind the augmenting path.
    while (j0 != 0) {
      const int j_prev = way[j0];
      matched_row[j0] = matched_row[j_prev];
      j0 = j_prev;
    }
  }

  MatchingResult result;
  result.feasible = true;
  result.match.assign(n, -1);
  for (int j = 1; j <= n; ++j) result.match[matched_row[j] - 1] = j - 1;
  result.total_weight = matched_weight_sum(wm, result.match);
  result.row_duals.resize(n);
  result.col_duals.resize(n);
  for (int i = 1; i <= n; ++i) result.row_duals[i - 1] = -u[i];
  for (int j = 1; j <= n; ++j) result.col_duals[j - 1] = -v[j];
  return result;
}

MatchingResult brute_force_matching(const WeightMatrix& wm) {
  check_shape(wm);
  const int n = wm.size;
  if (n > 9) {
    throw SolverGuardError(
        "brute_force_matching: refusing M > 9 (factorial enumeration)");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MatchingResult best;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = wm.allowed(i, perm[i]);
    if (!ok) continue;
    const double total = matched_weight_sum(wm, perm);
    if (!best.feasible || total > best.total_weight) {
      best.feasible = true;
      best.match = perm;
      best.total_weight = total;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace scfdma
