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

#include "scfdma/lfdma.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace scfdma {

namespace {

constexpr int kMaxUsersForSubsetDp = 16;

void check_guard(const Instance& inst) {
  if (inst.num_users > kMaxUsersForSubsetDp) {
    throw SolverGuardError(
        "lfdma: subset DP refuses M > " +
        std::to_string(kMaxUsersForSubsetDp) +
        " users; downsize the instance for the exact localized baseline");
  }
}

void throw_if_invalid(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : violations) msg += " " + v + ";";
  throw std::invalid_argument(msg);
}

std::vector<int> interval_channels(int start, int length) {
  std::vector<int> channels(length);
  std::iota(channels.begin(), channels.end(), start);
  return channels;
}

// Total power (length * p) of every (user, start, length) triple, infinity
// where the demand is unattainable. Index layout: ((u * N + start-1) * N +
// length-1).
struct CostTable {
  int num_channels = 0;
  std::vector<double> total;
  std::int64_t feasible = 0;

  double at(int user, int start, int length) const {
    return total[(static_cast<std::size_t>(user) * num_channels + start - 1) *
                     num_channels +
                 length - 1];
  }
};

CostTable build_cost_table(const Instance& inst, const RateModel& model,
                           int threads) {
  const int m = inst.num_users;
  const int n = inst.num_channels;
  CostTable table;
  table.num_channels = n;
  table.total.assign(static_cast<std::size_t>(m) * n * n,
                     std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> feasible_per_user(m, 0);

  auto fill_user = [&](int u) {
    std::vector<int> channels;
    for (int start = 1; start <= n; ++start) {
      for (int len = 1; len <= n - start + 1; ++len) {
        channels.resize(len);
        std::iota(channels.begin(), channels.end(), start);
        if (!feasibility_check(inst, u, channels, model)) continue;
        const auto cost = min_power_for_demand(inst, u, channels, model);
        table.total[(static_cast<std::size_t>(u) * n + start - 1) * n + len -
                    1] = cost->total_w;
        ++feasible_per_user[u];
      }
    }
  };

  threads = std::max(1, std::min(threads, m));
  if (threads == 1) {
    for (int u = 0; u < m; ++u) fill_user(u);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int u = t; u < m; u += threads) fill_user(u);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto f : feasible_per_user) table.feasible += f;
  return table;
}

}  // namespace

std::optional<UserCost> lfdma_user_block_cost(const Instance& inst, int user,
                                              int start, int length,
                                              const RateModel& model) {
  if (start < 1 || length < 1 || start + length - 1 > inst.num_channels) {
    throw std::invalid_argument(
        "lfdma_user_block_cost: interval out of range [1, N]");
  }
  const auto channels = interval_channels(start, length);
  return min_power_for_demand(inst, user, channels, model);
}

LfdmaReport lfdma_optimal(const Instance& inst, const SolveOptions& options) {
  throw_if_invalid(inst);
  check_guard(inst);
  const auto t0 = std::chrono::steady_clock::now();
  const RateModel& model =
      options.rate_model ? *options.rate_model : default_rate_model();
  const int m = inst.num_users;
  const int n = inst.num_channels;
  const double inf = std::numeric_limits<double>::infinity();

  const CostTable costs = build_cost_table(inst, model, options.threads);

  // dp[pos][mask]: minimum power to place the users in `mask` on pairwise
  // disjoint intervals within channels [pos, N]. Transitions: leave channel
  // `pos` unused, or start some user's interval at `pos`.
  const int num_masks = 1 << m;
  const std::size_t stride = static_cast<std::size_t>(num_masks);
  std::vector<double> dp(static_cast<std::size_t>(n + 2) * stride, inf);
  // choice: -1 = leave channel unused, else (user << 16) | length.
  std::vector<std::int32_t> choice(dp.size(), -1);
  for (int pos = 1; pos <= n + 1; ++pos) dp[pos * stride + 0] = 0.0;

  for (int pos = n; pos >= 1; --pos) {
    for (int mask = 1; mask < num_masks; ++mask) {
      double best = dp[(pos + 1) * stride + mask];
      std::int32_t best_choice = -1;
      for (int u = 0; u < m; ++u) {
        if (!(mask & (1 << u))) continue;
        const int rest = mask & ~(1 << u);
        const double* row =
            &costs.total[(static_cast<std::size_t>(u) * n + pos - 1) * n];
        for (int len = 1; len <= n - pos + 1; ++len) {
          const double entry = row[len - 1];
          if (!(entry < inf)) continue;
          const double cand = entry + dp[(pos + len) * stride + rest];
          if (cand < best) {
            best = cand;
            best_choice = (u << 16) | len;
          }
        }
      }
      dp[pos * stride + mask] = best;
      choice[pos * stride + mask] = best_choice;
    }
  }

  LfdmaReport report;
  report.stats.blocks_examined =
      static_cast<std::int64_t>(m) * n * (n + 1) / 2;
  report.stats.blocks_feasible = costs.feasible;

  const int full = num_masks - 1;
  if (dp[1 * stride + full] < inf) {
    ContiguousAllocationResult result;
    result.intervals.assign(m, ContiguousInterval{});
    result.per_user_channel_power_w.assign(m, 0.0);
    int pos = 1;
    int mask = full;
    while (mask != 0) {
      const std::int32_t ch = choice[pos * stride + mask];
      if (ch < 0) {
        ++pos;
        continue;
      }
      const int u = ch >> 16;
      const int len = ch & 0xFFFF;
      result.intervals[u] = ContiguousInterval{pos, len};
      mask &= ~(1 << u);
      pos += len;
    }
    double total = 0.0;
    for (int u = 0; u < m; ++u) {
      const auto cost = lfdma_user_block_cost(
          inst, u, result.intervals[u].start, result.intervals[u].length,
          model);
      result.per_user_channel_power_w[u] = cost->per_channel_power_w;
      total += cost->total_w;
    }
    result.total_power_w = total;
    report.result = std::move(result);
  }

  report.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

bool lfdma_feasible(const Instance& inst, const RateModel& model) {
  throw_if_invalid(inst);
  check_guard(inst);
  const int m = inst.num_users;
  const int n = inst.num_channels;

  // Feasibility-only interval table: one rate evaluation at the cap each.
  std::vector<char> ok(static_cast<std::size_t>(m) * n * n, 0);
  std::vector<int> channels;
  for (int u = 0; u < m; ++u) {
    for (int start = 1; start <= n; ++start) {
      for (int len = 1; len <= n - start + 1; ++len) {
        channels.resize(len);
        std::iota(channels.begin(), channels.end(), start);
        ok[(static_cast<std::size_t>(u) * n + start - 1) * n + len - 1] =
            feasibility_check(inst, u, channels, model) ? 1 : 0;
      }
    }
  }

  const int num_masks = 1 << m;
  const std::size_t stride = static_cast<std::size_t>(num_masks);
  std::vector<char> dp(static_cast<std::size_t>(n + 2) * stride, 0);
  for (int pos = 1; pos <= n + 1; ++pos) dp[pos * stride + 0] = 1;
  for (int pos = n; pos >= 1; --pos) {
    for (int mask = 1; mask < num_masks; ++mask) {
      char feasible = dp[(pos + 1) * stride + mask];
      for (int u = 0; u < m && !feasible; ++u) {
        if (!(mask & (1 << u))) continue;
        const int rest = mask & ~(1 << u);
        const char* row = &ok[(static_cast<std::size_t>(u) * n + pos - 1) * n];
        for (int len = 1; len <= n - pos + 1 && !feasible; ++len) {
          if (row[len - 1] && dp[(pos + len) * stride + rest]) feasible = 1;
        }
      }
      dp[pos * stride + mask] = feasible;
    }
  }
  return dp[1 * stride + (num_masks - 1)] != 0;
}

}  // namespace scfdma
