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

#include "scfdma/mpca.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "scfdma/blocks.hpp"

namespace scfdma {

namespace {

void fill_channels(const ChannelBlock& b, int position, int num_users,
                   std::vector<int>& out) {
  out.resize(b.c);
  for (int l = 0; l < b.c; ++l) {
    out[l] = b.q + l * (num_users + b.s) + position;
  }
}

// Weight build shared by the public builder and the block solver. When
// `bail_on_dead_row` is set, returns false as soon as some user has no
// feasible position (such a block cannot host a perfect matching).
bool build_weights_into(const Instance& inst, const ChannelBlock& block,
                        const RateModel& model, bool bail_on_dead_row,
                        WeightMatrix& wm, std::vector<int>& scratch) {
  const int m = inst.num_users;
  for (int i = 0; i < m; ++i) {
    bool row_alive = false;
    for (int pos = 1; pos <= m; ++pos) {
      fill_channels(block, pos, m, scratch);
      if (!feasibility_check(inst, i, scratch, model)) continue;
      const auto cost = min_power_for_demand(inst, i, scratch, model);
      // feasibility_check and min_power_for_demand share the same pmax-rate
      // comparison, so cost is always present here.
      wm.set(i, pos - 1, -cost->total_w);
      row_alive = true;
    }
    if (!row_alive && bail_on_dead_row) return false;
  }
  return true;
}

struct BlockCandidate {
  bool feasible = false;
  double total_power_w = 0.0;
  ChannelBlock block;
  std::int64_t index = -1;
  std::vector<int> match;  // 0-indexed columns
};

BlockCandidate solve_block(const Instance& inst, const ChannelBlock& block,
                           std::int64_t index, const RateModel& model,
                           WeightMatrix& wm, std::vector<int>& scratch) {
  BlockCandidate cand;
  cand.block = block;
  cand.index = index;
  wm = WeightMatrix(inst.num_users);
  if (!build_weights_into(inst, block, model, /*bail_on_dead_row=*/true, wm,
                          scratch)) {
    return cand;
  }
  MatchingResult matching = kuhn_munkres(wm);
  if (!matching.feasible) return cand;
  cand.feasible = true;
  cand.total_power_w = -matching.total_weight;
  cand.match = std::move(matching.match);
  return cand;
}

// (power, enumeration index) lexicographic order; ties across blocks go to
// the earlier block.
bool better(const BlockCandidate& a, const BlockCandidate& b) {
  if (!a.feasible) return false;
  if (!b.feasible) return true;
  if (a.total_power_w != b.total_power_w) {
    return a.total_power_w < b.total_power_w;
  }
  return a.index < b.index;
}

void throw_if_invalid(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : violations) msg += " " + v + ";";
  throw std::invalid_argument(msg);
}

AllocationResult finalize(const Instance& inst, const BlockCandidate& best,
                          const RateModel& model) {
  AllocationResult result;
  result.allocation.block = best.block;
  result.allocation.positions.resize(inst.num_users);
  result.per_user_channel_power_w.resize(inst.num_users);
  std::vector<int> scratch;
  double total = 0.0;
  for (int i = 0; i < inst.num_users; ++i) {
    const int pos = best.match[i] + 1;
    result.allocation.positions[i] = pos;
    fill_channels(best.block, pos, inst.num_users, scratch);
    const auto cost = min_power_for_demand(inst, i, scratch, model);
    result.per_user_channel_power_w[i] = cost->per_channel_power_w;
    total += cost->total_w;
  }
  result.total_power_w = total;
  return result;
}

}  // namespace

WeightMatrix build_weight_matrix(const Instance& inst,
                                 const ChannelBlock& block,
                                 const RateModel& model) {
  throw_if_invalid(inst);
  if (!block_valid(block, inst.num_users, inst.num_channels)) {
    throw std::invalid_argument("build_weight_matrix: block invalid for (M, N)");
  }
  WeightMatrix wm(inst.num_users);
  std::vector<int> scratch;
  build_weights_into(inst, block, model, /*bail_on_dead_row=*/false, wm,
                     scratch);
  return wm;
}

SolveReport mpca(const Instance& inst, const SolveOptions& options) {
  throw_if_invalid(inst);
  const auto t0 = std::chrono::steady_clock::now();
  const RateModel& model =
      options.rate_model ? *options.rate_model : default_rate_model();

  SolveReport report;
  BlockCandidate best;
  std::int64_t feasible_blocks = 0;

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    WeightMatrix wm(inst.num_users);
    std::vector<int> scratch;
    std::int64_t index = 0;
    for_each_block(inst.num_users, inst.num_channels,
                   [&](const ChannelBlock& block) {
                     BlockCandidate cand =
                         solve_block(inst, block, index++, model, wm, scratch);
                     if (cand.feasible) ++feasible_blocks;
                     if (better(cand, best)) best = std::move(cand);
                   });
    report.stats.blocks_examined = index;
  } else {
    const BlockList list = enumerate_blocks(inst.num_users, inst.num_channels);
    std::atomic<std::int64_t> next{0};
    std::atomic<std::int64_t> feasible_count{0};
    std::vector<BlockCandidate> local_best(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        WeightMatrix wm(inst.num_users);
        std::vector<int> scratch;
        std::int64_t local_feasible = 0;
        for (std::int64_t k = next.fetch_add(1); k < list.count();
             k = next.fetch_add(1)) {
          BlockCandidate cand =
              solve_block(inst, list.blocks[k], k, model, wm, scratch);
          if (cand.feasible) ++local_feasible;
          if (better(cand, local_best[t])) local_best[t] = std::move(cand);
        }
        feasible_count.fetch_add(local_feasible);
      });
    }
    for (auto& th : pool) th.join();
    for (auto& cand : local_best) {
      if (better(cand, best)) best = std::move(cand);
    }
    feasible_blocks = feasible_count.load();
    report.stats.blocks_examined = list.count();
  }

  report.stats.blocks_feasible = feasible_blocks;
  if (best.feasible) {
    report.result = finalize(inst, best, model);
  }
  report.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::optional<double> evaluate_allocation(const Instance& inst,
                                          const Allocation& allocation,
                                          const RateModel& model) {
  throw_if_invalid(inst);
  if (!block_valid(allocation.block, inst.num_users, inst.num_channels)) {
    throw std::invalid_argument("evaluate_allocation: invalid block");
  }
  if (!positions_valid(allocation.positions, inst.num_users)) {
    throw std::invalid_argument(
        "evaluate_allocation: positions must be a permutation of 1..M");
  }
  std::vector<int> scratch;
  double total = 0.0;
  for (int i = 0; i < inst.num_users; ++i) {
    fill_channels(allocation.block, allocation.positions[i], inst.num_users,
                  scratch);
    if (!feasibility_check(inst, i, scratch, model)) return std::nullopt;
    const auto cost = min_power_for_demand(inst, i, scratch, model);
    total += cost->total_w;
  }
  return total;
}

bool ifdma_feasible(const Instance& inst, const RateModel& model) {
  throw_if_invalid(inst);
  const int m = inst.num_users;
  bool found = false;
  std::vector<int> scratch;
  for_each_block(inst.num_users, inst.num_channels,
                 [&](const ChannelBlock& block) {
                   if (found) return;
                   WeightMatrix wm(m);
                   for (int i = 0; i < m; ++i) {
                     bool row_alive = false;
                     for (int pos = 1; pos <= m; ++pos) {
                       fill_channels(block, pos, m, scratch);
                       if (feasibility_check(inst, i, scratch, model)) {
                         wm.set(i, pos - 1, 0.0);
                         row_alive = true;
                       }
                     }
                     if (!row_alive) return;
                   }
                   if (kuhn_munkres(wm).feasible) found = true;
                 });
  return found;
}

}  // namespace scfdma
