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
#include <string>
#include <string_view>
#include <vector>

#include "scfdma/gainsim.hpp"
#include "scfdma/model.hpp"

namespace scfdma {

enum class Scheme { kIfdma, kLfdma };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_name(std::string_view name);

// One solve of one scheme at one (seed, demand) point. For a fixed seed the
// same gain matrix is fed to every demand and scheme, so per-seed scheme
// differences are meaningful.
struct SweepRow {
  std::uint64_t seed = 0;
  double demand_bps = 0.0;
  Scheme scheme = Scheme::kIfdma;
  bool feasible = false;
  double total_power_w = 0.0;  // meaningful iff feasible
  // Wall time of the solve. Kept out of the CSV so that repeated runs of the
  // same configuration produce byte-identical files.
  double solve_time_s = 0.0;
  std::string note;  // error note (solver guard refusals), normally empty
};

struct SweepOptions {
  int threads = 1;  // rows are independent jobs; output order is canonical
};

// Runs every (seed, demand, scheme) combination. Gains are sampled once per
// seed and shared across demands and schemes. Rows come back sorted by
// (seed, demand, scheme) regardless of completion order.
std::vector<SweepRow> run_sweep(const Scenario& scenario,
                                const std::vector<double>& demands_bps,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<Scheme>& schemes,
                                const SweepOptions& options = {});

// CSV schema: seed,demand_bps,scheme,feasible,total_power_w,note with one
// row per solve; total_power_w is empty when infeasible. Doubles are written
// in shortest round-trip form, so parse(write(rows)) preserves every value
// exactly. solve_time_s is not serialized.
std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_rows_from_csv(const std::string& text);

// Aggregates per (demand, scheme): feasibility fraction, mean and 10th/90th
// percentile of total power over the feasible seeds; plus run parameters.
std::string sweep_summary_json(const Scenario& scenario,
                               const std::vector<SweepRow>& rows,
                               int indent = 2);

// Largest uniform demand on the grid {resolution, 2*resolution, ...} for
// which the scheme still has a feasible allocation on this instance, found
// by bisection over the grid (feasibility is monotone non-increasing in the
// demand). Returns 0 when even `resolution` is infeasible.
double max_supported_demand(const Instance& base, Scheme scheme,
                            double resolution_bps);

struct MaxDemandRow {
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kIfdma;
  double max_demand_bps = 0.0;
  std::string note;
};

// max_supported_demand per (seed, scheme), gains sampled once per seed.
std::vector<MaxDemandRow> run_max_demand(const Scenario& scenario,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<Scheme>& schemes,
                                         double resolution_bps,
                                         const SweepOptions& options = {});

// CSV schema: seed,scheme,max_demand_bps,note.
std::string max_demand_rows_to_csv(const std::vector<MaxDemandRow>& rows);

// Per-scheme mean/percentiles plus, when both schemes are present, the
// ratio of mean supported demands (localized over interleaved).
std::string max_demand_summary_json(const Scenario& scenario,
                                    const std::vector<MaxDemandRow>& rows,
                                    double resolution_bps, int indent = 2);

// Shortest round-trip decimal form; integral values print without exponent.
std::string format_double(double value);

}  // namespace scfdma
