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

#include <optional>

#include "scfdma/model.hpp"
#include "scfdma/mpca.hpp"
#include "scfdma/power.hpp"

namespace scfdma {

// One user's contiguous channel interval, 1-indexed, inclusive of `start`.
struct ContiguousInterval {
  int start = 0;
  int length = 0;

  friend bool operator==(const ContiguousInterval&,
                         const ContiguousInterval&) = default;
};

struct ContiguousAllocationResult {
  std::vector<ContiguousInterval> intervals;  // per user, pairwise disjoint
  std::vector<double> per_user_channel_power_w;
  double total_power_w = 0.0;
};

// For the localized baseline, SolveStats counts candidate (user, interval)
// cost entries instead of interleaved blocks.
struct LfdmaReport {
  std::optional<ContiguousAllocationResult> result;
  SolveStats stats;
};

// Minimum power of `user` on the contiguous interval [start, start+length-1],
// with the per-channel cap min(P^u/length, P^s). Throws on an out-of-range
// interval.
std::optional<UserCost> lfdma_user_block_cost(
    const Instance& inst, int user, int start, int length,
    const RateModel& model = default_rate_model());

// Exact optimal localized allocation: minimizes total power over all
// assignments of one contiguous interval per user, intervals pairwise
// disjoint, lengths free (>= 1), channels may stay unused. Dynamic program
// over (next free channel, set of users still to place); exponential in M,
// guarded at M <= 16 (throws SolverGuardError above that, suggesting a
// smaller instance).
LfdmaReport lfdma_optimal(const Instance& inst,
                          const SolveOptions& options = {});

// Existence-only variant for demand-capacity searches: true iff some
// disjoint contiguous assignment satisfies every demand at the power caps.
bool lfdma_feasible(const Instance& inst,
                    const RateModel& model = default_rate_model());

}  // namespace scfdma
