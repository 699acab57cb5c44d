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

#include <cstdint>
#include <optional>

#include "scfdma/matching.hpp"
#include "scfdma/model.hpp"
#include "scfdma/power.hpp"

namespace scfdma {

struct SolveStats {
  std::int64_t blocks_examined = 0;
  std::int64_t blocks_feasible = 0;
  double wall_time_s = 0.0;
};

struct SolveReport {
  std::optional<AllocationResult> result;  // empty: no feasible allocation
  SolveStats stats;
};

struct SolveOptions {
  // Blocks are independent; with threads > 1 they are solved by a work pool.
  // The reduction tie-breaks on (total power, enumeration index), so the
  // result is identical to the sequential run.
  int threads = 1;
  const RateModel* rate_model = nullptr;  // nullptr: default Shannon model
};

// Matching weights for one block: entry (i, v) is -c * p_i for user i at
// sub-block position v+1 when the demand is attainable under the power caps,
// masked off otherwise.
WeightMatrix build_weight_matrix(const Instance& inst,
                                 const ChannelBlock& block,
                                 const RateModel& model = default_rate_model());

// Exact interleaved Min-Power: enumerates every channel block, solves a
// maximum-weight perfect matching per block, and returns the global minimum
// total power. Ties across blocks go to the first block in enumeration
// order. Throws std::invalid_argument on an invalid instance.
SolveReport mpca(const Instance& inst, const SolveOptions& options = {});

// Independent checker: recomputes every user's channel set and minimum power
// from scratch for a given allocation. Returns the total power, or nullopt
// if any user cannot meet its demand under the caps. Throws on a malformed
// allocation (invalid block or non-permutation).
std::optional<double> evaluate_allocation(
    const Instance& inst, const Allocation& allocation,
    const RateModel& model = default_rate_model());

// Existence-only variant used by demand-capacity searches: true iff some
// block admits a perfect matching of users to positions that are feasible at
// the power caps. No power minimization is performed.
bool ifdma_feasible(const Instance& inst,
                    const RateModel& model = default_rate_model());

}  // namespace scfdma
