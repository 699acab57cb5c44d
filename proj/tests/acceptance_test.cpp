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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any criterion fails. Pass the CLI binary
// path as argv[1] to exercise the determinism criterion through the real
// executable (it falls back to the in-process API otherwise).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scfdma/blocks.hpp"
#include "scfdma/experiments.hpp"
#include "scfdma/gainsim.hpp"
#include "scfdma/lfdma.hpp"
#include "scfdma/matching.hpp"
#include "scfdma/model.hpp"
#include "scfdma/mpca.hpp"
#include "scfdma/power.hpp"
#include "test_helpers.hpp"

using namespace scfdma;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

WeightMatrix random_masked_weights(std::mt19937_64& rng, int m,
                                   double mask_off_prob) {
  std::uniform_real_distribution<double> weight(-10.0, 0.0);
  std::bernoulli_distribution mask_off(mask_off_prob);
  WeightMatrix wm(m);
  std::vector<int> hidden(m);
  std::iota(hidden.begin(), hidden.end(), 0);
  std::shuffle(hidden.begin(), hidden.end(), rng);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j != hidden[i] && mask_off(rng)) continue;
      wm.set(i, j, weight(rng));
    }
  }
  return wm;
}

bool dual_certificate_holds(const WeightMatrix& wm, const MatchingResult& r) {
  double max_abs = 0.0;
  for (int i = 0; i < wm.size; ++i) {
    for (int j = 0; j < wm.size; ++j) {
      if (wm.allowed(i, j)) max_abs = std::max(max_abs, std::abs(wm.weight(i, j)));
    }
  }
  const double eps = 1e-9 * (1.0 + max_abs);
  for (int i = 0; i < wm.size; ++i) {
    for (int j = 0; j < wm.size; ++j) {
      if (!wm.allowed(i, j)) continue;
      if (r.row_duals[i] + r.col_duals[j] < wm.weight(i, j) - eps) return false;
    }
  }
  for (int i = 0; i < wm.size; ++i) {
    const int j = r.match[i];
    if (std::abs(r.row_duals[i] + r.col_duals[j] - wm.weight(i, j)) > eps) {
      return false;
    }
  }
  return true;
}

// Criterion 1: Kuhn-Munkres equals the factorial oracle within 1e-9 on 1000
// random masked instances, with the dual certificate holding on every solve.
Outcome criterion_matching_oracle() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> size(2, 7);
  int solved = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = size(rng);
    const WeightMatrix wm = random_masked_weights(rng, m, 0.2);
    const MatchingResult km = kuhn_munkres(wm);
    const MatchingResult oracle = brute_force_matching(wm);
    if (!km.feasible || !oracle.feasible) {
      return {false, "unexpected infeasible instance at trial " +
                         std::to_string(trial)};
    }
    if (std::abs(km.total_weight - oracle.total_weight) > 1e-9) {
      return {false, "weight mismatch at trial " + std::to_string(trial)};
    }
    if (!dual_certificate_holds(wm, km)) {
      return {false, "dual certificate failed at trial " + std::to_string(trial)};
    }
    ++solved;
  }
  return {true, std::to_string(solved) + " instances, max deviation <= 1e-9"};
}

std::optional<double> exhaustive_block_perm_search(const Instance& inst) {
  std::optional<double> best;
  std::vector<int> positions(inst.num_users);
  for_each_block(inst.num_users, inst.num_channels, [&](const ChannelBlock& b) {
    std::iota(positions.begin(), positions.end(), 1);
    do {
      const auto total = evaluate_allocation(inst, Allocation{b, positions});
      if (total && (!best || *total < *best)) best = *total;
    } while (std::next_permutation(positions.begin(), positions.end()));
  });
  return best;
}

// Criterion 2: exact agreement with exhaustive (block x permutation) search
// on 200 random desk-scale instances.
Outcome criterion_mpca_exactness() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> users(1, 5);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = users(rng);
    std::uniform_int_distribution<int> chans(m, 12);
    const Instance inst = testing::random_instance(rng, m, chans(rng));
    const SolveReport report = mpca(inst);
    const auto reference = exhaustive_block_perm_search(inst);
    if (report.result.has_value() != reference.has_value()) {
      return {false, "feasibility mismatch at trial " + std::to_string(trial)};
    }
    if (reference) {
      ++feasible;
      if (report.result->total_power_w != *reference) {
        return {false, "total mismatch at trial " + std::to_string(trial)};
      }
    }
  }
  return {true, "200 instances (" + std::to_string(feasible) +
                    " feasible), totals bit-identical"};
}

// Criterion 3: loop enumeration equals the brute-force triple scan on the
// full grid 1 <= M <= N <= 20, within the cubic bound.
Outcome criterion_enumeration() {
  for (int m = 1; m <= 20; ++m) {
    for (int n = m; n <= 20; ++n) {
      const std::int64_t k = enumerate_blocks(m, n).count();
      if (k != count_blocks_bruteforce(m, n)) {
        return {false, "count mismatch at M=" + std::to_string(m) +
                           ", N=" + std::to_string(n)};
      }
      const std::int64_t bound =
          (n + 1) + static_cast<std::int64_t>(n + 1) * (n + 1) * (n + 1);
      if (k > bound) {
        return {false, "cubic bound violated at M=" + std::to_string(m) +
                           ", N=" + std::to_string(n)};
      }
    }
  }
  return {true, "grid 1 <= M <= N <= 20 verified"};
}

// Criterion 4: single-channel bisection matches the closed-form inversion
// (2^(d/B) - 1) sigma^2 / g within 1e-6 relative on 1e4 random draws.
Outcome criterion_power_inversion() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> log_p(-5.0, 0.0);
  std::uniform_real_distribution<double> rate_ratio(0.01, 10.0);
  std::uniform_real_distribution<double> cap_factor(1.01, 100.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double p_target = std::pow(10.0, log_p(rng));
    const double d_over_b = rate_ratio(rng);
    const double gain_over_noise = (std::pow(2.0, d_over_b) - 1.0) / p_target;
    Instance inst;
    inst.num_users = 1;
    inst.num_channels = 1;
    inst.channel_bandwidth_hz = 180e3;
    inst.demands_bps = {d_over_b * inst.channel_bandwidth_hz};
    inst.noise_power_w = 1.0;
    inst.gains = {gain_over_noise};
    inst.user_power_limit_w = p_target * cap_factor(rng);
    inst.channel_peak_power_limit_w = inst.user_power_limit_w;
    const std::vector<int> channels{1};
    const auto cost = min_power_for_demand(inst, 0, channels);
    if (!cost) {
      return {false, "unexpectedly infeasible at trial " + std::to_string(trial)};
    }
    const double closed_form =
        (std::pow(2.0, inst.demands_bps[0] / inst.channel_bandwidth_hz) - 1.0) *
        inst.noise_power_w / inst.gains[0];
    const double rel =
        std::abs(cost->per_channel_power_w - closed_form) / closed_form;
    worst = std::max(worst, rel);
    if (rel > 1e-6) {
      return {false, "relative error " + std::to_string(rel) + " at trial " +
                         std::to_string(trial)};
    }
  }
  std::ostringstream detail;
  detail << "10000 draws, worst relative error " << worst;
  return {true, detail.str()};
}

void lfdma_brute_rec(const Instance& inst, int user, std::uint32_t used,
                     double partial, std::optional<double>& best) {
  if (user == inst.num_users) {
    if (!best || partial < *best) best = partial;
    return;
  }
  for (int start = 1; start <= inst.num_channels; ++start) {
    for (int len = 1; start + len - 1 <= inst.num_channels; ++len) {
      const std::uint32_t span = ((1u << len) - 1u) << (start - 1);
      if (used & span) continue;
      const auto cost = lfdma_user_block_cost(inst, user, start, len);
      if (!cost) continue;
      lfdma_brute_rec(inst, user + 1, used | span, partial + cost->total_w,
                      best);
    }
  }
}

// Criterion 5: the subset DP equals brute-force disjoint-interval
// enumeration on 200 random instances with M <= 3, N <= 10.
Outcome criterion_lfdma_exactness() {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> users(1, 3);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = users(rng);
    std::uniform_int_distribution<int> chans(m, 10);
    const Instance inst = testing::random_instance(rng, m, chans(rng));
    const LfdmaReport report = lfdma_optimal(inst);
    std::optional<double> reference;
    lfdma_brute_rec(inst, 0, 0u, 0.0, reference);
    if (report.result.has_value() != reference.has_value()) {
      return {false, "feasibility mismatch at trial " + std::to_string(trial)};
    }
    if (reference) {
      ++feasible;
      if (report.result->total_power_w != *reference) {
        return {false, "total mismatch at trial " + std::to_string(trial)};
      }
    }
  }
  return {true, "200 instances (" + std::to_string(feasible) +
                    " feasible), totals bit-identical"};
}

constexpr int kSeeds = 50;

std::vector<std::uint64_t> seed_list() {
  std::vector<std::uint64_t> seeds(kSeeds);
  std::iota(seeds.begin(), seeds.end(), 1);
  return seeds;
}

// Criterion 6: qualitative power-vs-demand reproduction on the standard
// scenario. (a) mean localized power <= mean interleaved power at every
// demand point where both schemes are feasible in >= 80% of seeds (means
// paired over the seeds where both are feasible); (b) interleaved
// feasibility drops below 50% somewhere in [1.0, 2.0] Mbit/s.
Outcome criterion_power_vs_demand(const std::vector<SweepRow>& rows) {
  std::vector<double> demands;
  for (double d = 400e3; d <= 3000e3 + 1.0; d += 200e3) demands.push_back(d);

  bool crossing_found = false;
  int qualifying_points = 0;
  std::ostringstream detail;
  for (double demand : demands) {
    int i_feasible = 0, l_feasible = 0, both = 0;
    double i_sum = 0.0, l_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      const SweepRow* ifdma_row = nullptr;
      const SweepRow* lfdma_row = nullptr;
      for (const auto& row : rows) {
        if (row.seed != seed || row.demand_bps != demand) continue;
        (row.scheme == Scheme::kIfdma ? ifdma_row : lfdma_row) = &row;
      }
      if (!ifdma_row || !lfdma_row) return {false, "missing sweep rows"};
      if (ifdma_row->feasible) ++i_feasible;
      if (lfdma_row->feasible) ++l_feasible;
      if (ifdma_row->feasible && lfdma_row->feasible) {
        ++both;
        i_sum += ifdma_row->total_power_w;
        l_sum += lfdma_row->total_power_w;
      }
    }
    const double i_frac = static_cast<double>(i_feasible) / kSeeds;
    const double l_frac = static_cast<double>(l_feasible) / kSeeds;
    if (demand >= 1.0e6 && demand <= 2.0e6 && i_frac < 0.5) {
      crossing_found = true;
    }
    if (i_frac >= 0.8 && l_frac >= 0.8) {
      ++qualifying_points;
      if (l_sum / both > i_sum / both) {
        std::ostringstream msg;
        msg << "mean lfdma " << l_sum / both << " W > mean ifdma "
            << i_sum / both << " W at " << demand / 1e3 << " kbit/s";
        return {false, msg.str()};
      }
    }
  }
  if (!crossing_found) {
    return {false, "interleaved feasibility never fell below 50% in [1.0, 2.0] Mbit/s"};
  }
  detail << qualifying_points
         << " demand point(s) with >= 80% feasibility for both schemes; "
            "localized mean <= interleaved mean at each; feasibility "
            "crossing inside [1.0, 2.0] Mbit/s";
  return {true, detail.str()};
}

// Criterion 7: ratio of mean supported demands (localized / interleaved)
// within [1.5, 2.5] over 50 seeds.
Outcome criterion_max_demand_ratio(const std::vector<MaxDemandRow>& rows) {
  double sum_i = 0.0, sum_l = 0.0;
  for (const auto& row : rows) {
    (row.scheme == Scheme::kIfdma ? sum_i : sum_l) += row.max_demand_bps;
  }
  if (sum_i <= 0.0) return {false, "interleaved supported no demand at all"};
  const double ratio = sum_l / sum_i;
  std::ostringstream detail;
  detail << "mean lfdma " << sum_l / kSeeds / 1e3 << " kbit/s, mean ifdma "
         << sum_i / kSeeds / 1e3 << " kbit/s, ratio " << ratio;
  if (ratio < 1.5 || ratio > 2.5) return {false, detail.str()};
  return {true, detail.str()};
}

// Per-block feasibility mask plus whether it hosts any feasible assignment.
struct BlockSupport {
  bool usable = false;
  std::vector<char> mask;  // m x m, (user, position)
};

BlockSupport block_support(const Instance& inst, const ChannelBlock& block) {
  const int m = inst.num_users;
  BlockSupport support;
  support.mask.assign(static_cast<std::size_t>(m) * m, 0);
  WeightMatrix wm(m);
  for (int i = 0; i < m; ++i) {
    bool alive = false;
    for (int pos = 1; pos <= m; ++pos) {
      const auto channels = channels_of(block, pos, m);
      if (feasibility_check(inst, i, channels)) {
        support.mask[static_cast<std::size_t>(i) * m + pos - 1] = 1;
        wm.set(i, pos - 1, 0.0);
        alive = true;
      }
    }
    if (!alive) return support;
  }
  support.usable = kuhn_munkres(wm).feasible;
  return support;
}

bool submatching_exists(const std::vector<char>& mask, int m, int from_user,
                        const std::vector<char>& taken) {
  const int size = m - from_user;
  if (size == 0) return true;
  std::vector<int> free_positions;
  for (int pos = 1; pos <= m; ++pos) {
    if (!taken[pos]) free_positions.push_back(pos);
  }
  WeightMatrix wm(size);
  for (int i = from_user; i < m; ++i) {
    for (int j = 0; j < size; ++j) {
      if (mask[static_cast<std::size_t>(i) * m + free_positions[j] - 1]) {
        wm.set(i - from_user, j, 0.0);
      }
    }
  }
  return kuhn_munkres(wm).feasible;
}

// Uniform-over-blocks random draw from the feasible assignment set: users in
// ascending order pick a random feasible position that keeps the remaining
// users matchable. Precondition: support.usable.
std::vector<int> sample_feasible_positions(const BlockSupport& support, int m,
                                           std::mt19937_64& rng) {
  std::vector<int> perm(m, 0);
  std::vector<char> taken(m + 1, 0);
  for (int i = 0; i < m; ++i) {
    std::vector<int> candidates;
    for (int pos = 1; pos <= m; ++pos) {
      if (!taken[pos] && support.mask[static_cast<std::size_t>(i) * m + pos - 1]) {
        candidates.push_back(pos);
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (int pos : candidates) {
      taken[pos] = 1;
      if (submatching_exists(support.mask, m, i + 1, taken)) {
        perm[i] = pos;
        break;
      }
      taken[pos] = 0;
    }
  }
  return perm;
}

// Criterion 8: on 20 standard-scenario instances, the solver total is a
// lower bound on 1e4 randomly sampled feasible allocations per instance; on
// instances the solver declares infeasible, 1e4 random allocation attempts
// must all be infeasible.
Outcome criterion_dominance() {
  std::mt19937_64 rng(808);
  long long feasible_checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Scenario sc;
    sc.seed = seed;
    const Instance inst = sample_instance(sc).instance;
    const SolveReport report = mpca(inst);
    const BlockList blocks = enumerate_blocks(inst.num_users, inst.num_channels);
    std::uniform_int_distribution<int> block_pick(0, blocks.count() - 1);
    const int m = inst.num_users;

    if (!report.result) {
      std::vector<int> positions(m);
      for (int attempt = 0; attempt < 10000; ++attempt) {
        std::iota(positions.begin(), positions.end(), 1);
        std::shuffle(positions.begin(), positions.end(), rng);
        const Allocation alloc{blocks.blocks[block_pick(rng)], positions};
        if (evaluate_allocation(inst, alloc)) {
          return {false, "sampled a feasible allocation on a seed the solver "
                         "declared infeasible (seed " + std::to_string(seed) + ")"};
        }
      }
      continue;
    }

    std::vector<std::optional<BlockSupport>> cache(blocks.count());
    for (int sample = 0; sample < 10000; ++sample) {
      int k = block_pick(rng);
      while (true) {
        if (!cache[k]) cache[k] = block_support(inst, blocks.blocks[k]);
        if (cache[k]->usable) break;
        k = block_pick(rng);
      }
      const Allocation alloc{blocks.blocks[k],
                             sample_feasible_positions(*cache[k], m, rng)};
      const auto total = evaluate_allocation(inst, alloc);
      if (!total) {
        return {false, "feasible sampler produced an infeasible allocation "
                       "(seed " + std::to_string(seed) + ")"};
      }
      ++feasible_checked;
      if (*total < report.result->total_power_w * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "feasible allocation with total " << *total
            << " W beats solver total " << report.result->total_power_w
            << " W on seed " << seed;
        return {false, msg.str()};
      }
    }
  }
  return {true, std::to_string(feasible_checked) +
                    " feasible allocations sampled, zero violations"};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Criterion 9: sweep-demand twice with an identical configuration produces
// byte-identical CSV. Uses the CLI binary when its path is supplied.
Outcome criterion_determinism(const char* cli_path) {
  const Scenario scenario;  // standard defaults
  const auto tmp = std::filesystem::temp_directory_path() / "scfdma-acceptance";
  std::filesystem::create_directories(tmp);

  if (cli_path != nullptr) {
    const auto config = tmp / "scenario.json";
    std::ofstream(config) << scenario_to_json(scenario) << "\n";
    const auto out1 = tmp / "rows1.csv";
    const auto out2 = tmp / "rows2.csv";
    for (const auto& out : {out1, out2}) {
      std::ostringstream cmd;
      cmd << '"' << cli_path << '"'
          << " sweep-demand --config " << config << " --demands 400000:400000:1200000"
          << " --seeds 5 --schemes ifdma,lfdma --out " << out << " > /dev/null";
      if (std::system(cmd.str().c_str()) != 0) {
        return {false, "CLI invocation failed"};
      }
    }
    const std::string first = read_file(out1);
    if (first.empty() || first != read_file(out2)) {
      return {false, "CLI CSV outputs differ between runs"};
    }
    return {true, "two CLI runs produced byte-identical CSV (" +
                      std::to_string(first.size()) + " bytes)"};
  }

  const std::vector<double> demands{400e3, 800e3, 1200e3};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const std::vector<Scheme> schemes{Scheme::kIfdma, Scheme::kLfdma};
  const std::string first =
      sweep_rows_to_csv(run_sweep(scenario, demands, seeds, schemes));
  const std::string second =
      sweep_rows_to_csv(run_sweep(scenario, demands, seeds, schemes));
  if (first != second) return {false, "in-process CSV outputs differ"};
  return {true, "two in-process runs produced byte-identical CSV"};
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli_path = argc > 1 ? argv[1] : nullptr;

  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& outcome) {
    std::printf("%s  %d  %s: %s\n", outcome.pass ? "PASS" : "FAIL", id, name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  };

  report(1, "matching-oracle-equivalence", criterion_matching_oracle());
  report(2, "mpca-exactness-at-toy-scale", criterion_mpca_exactness());
  report(3, "block-enumeration-correctness", criterion_enumeration());
  report(4, "power-inversion-closed-form", criterion_power_inversion());
  report(5, "lfdma-dp-exactness", criterion_lfdma_exactness());

  {
    Scenario scenario;  // standard defaults: M=10, N=64, 200 mW / 10 mW
    std::vector<double> demands;
    for (double d = 400e3; d <= 3000e3 + 1.0; d += 200e3) demands.push_back(d);
    const auto rows = run_sweep(scenario, demands, seed_list(),
                                {Scheme::kIfdma, Scheme::kLfdma});
    report(6, "power-vs-demand-reproduction", criterion_power_vs_demand(rows));

    const auto max_rows = run_max_demand(
        scenario, seed_list(), {Scheme::kIfdma, Scheme::kLfdma}, 10e3);
    report(7, "max-demand-ratio", criterion_max_demand_ratio(max_rows));
  }

  report(8, "dominance-sampling", criterion_dominance());
  report(9, "sweep-csv-determinism", criterion_determinism(cli_path));

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return EXIT_FAILURE;
  }
  std::printf("all 9 acceptance criteria passed\n");
  return EXIT_SUCCESS;
}
