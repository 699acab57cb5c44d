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

#include "scfdma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>

#include "json.hpp"
#include "scfdma/lfdma.hpp"
#include "scfdma/mpca.hpp"

namespace scfdma {

namespace {

constexpr std::string_view kIfdmaName = "ifdma";
constexpr std::string_view kLfdmaName = "lfdma";

template <typename Job>
void run_jobs(std::size_t count, int threads, Job&& job) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        job(k);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Scheme> canonical_schemes(const std::vector<Scheme>& schemes) {
  std::vector<Scheme> out;
  for (Scheme s : {Scheme::kIfdma, Scheme::kLfdma}) {
    if (std::find(schemes.begin(), schemes.end(), s) != schemes.end()) {
      out.push_back(s);
    }
  }
  return out;
}

// Gains per seed, sampled once and shared by every row of that seed.
std::vector<Instance> sample_seed_instances(
    const Scenario& scenario, const std::vector<std::uint64_t>& seeds) {
  std::vector<Instance> instances;
  instances.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    Scenario per_seed = scenario;
    per_seed.seed = seed;
    instances.push_back(sample_instance(per_seed).instance);
  }
  return instances;
}

void csv_append_field(std::string& out, std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n") != std::string_view::npos;
  if (!needs_quotes) {
    out += field;
    return;
  }
  out += '"';
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

std::vector<std::string> csv_split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double(const std::string& s, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("CSV: bad ") + what + ": " + s);
  }
  return value;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("CSV: bad ") + what + ": " + s);
  }
  return value;
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

// Linear-interpolated percentile of a sorted sample, p in [0, 1].
double percentile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  const double idx = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = idx - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

nlohmann::json scenario_json_value(const Scenario& scenario) {
  return nlohmann::json::parse(scenario_to_json(scenario));
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  return scheme == Scheme::kIfdma ? kIfdmaName : kLfdmaName;
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  if (name == kIfdmaName) return Scheme::kIfdma;
  if (name == kLfdmaName) return Scheme::kLfdma;
  return std::nullopt;
}

std::string format_double(double value) {
  if (std::isfinite(value) && value == std::floor(value) &&
      std::abs(value) < 1e15) {
    char buf[32];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, static_cast<long long>(value));
    return std::string(buf, ptr);
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<SweepRow> run_sweep(const Scenario& scenario,
                                const std::vector<double>& demands_bps,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<Scheme>& schemes,
                                const SweepOptions& options) {
  if (demands_bps.empty() || seeds.empty() || schemes.empty()) {
    throw std::invalid_argument("run_sweep: demands, seeds and schemes must be non-empty");
  }
  const auto seed_list = sorted_unique(seeds);
  const auto demand_list = sorted_unique(demands_bps);
  const auto scheme_list = canonical_schemes(schemes);
  const auto instances = sample_seed_instances(scenario, seed_list);

  std::vector<SweepRow> rows;
  for (std::size_t si = 0; si < seed_list.size(); ++si) {
    for (double demand : demand_list) {
      for (Scheme scheme : scheme_list) {
        SweepRow row;
        row.seed = seed_list[si];
        row.demand_bps = demand;
        row.scheme = scheme;
        rows.push_back(std::move(row));
      }
    }
  }

  const std::size_t per_seed = demand_list.size() * scheme_list.size();
  run_jobs(rows.size(), options.threads, [&](std::size_t k) {
    SweepRow& row = rows[k];
    Instance inst = instances[k / per_seed];
    inst.demands_bps.assign(inst.num_users, row.demand_bps);
    try {
      if (row.scheme == Scheme::kIfdma) {
        const SolveReport report = mpca(inst);
        row.feasible = report.result.has_value();
        if (row.feasible) row.total_power_w = report.result->total_power_w;
        row.solve_time_s = report.stats.wall_time_s;
      } else {
        const LfdmaReport report = lfdma_optimal(inst);
        row.feasible = report.result.has_value();
        if (row.feasible) row.total_power_w = report.result->total_power_w;
        row.solve_time_s = report.stats.wall_time_s;
      }
    } catch (const SolverGuardError& e) {
      row.feasible = false;
      row.note = e.what();
    }
  });
  return rows;
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "seed,demand_bps,scheme,feasible,total_power_w,note\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.seed);
    out += ',';
    out += format_double(row.demand_bps);
    out += ',';
    out += scheme_name(row.scheme);
    out += ',';
    out += row.feasible ? '1' : '0';
    out += ',';
    if (row.feasible) out += format_double(row.total_power_w);
    out += ',';
    csv_append_field(out, row.note);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> sweep_rows_from_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = csv_split_line(line);
    if (fields.size() != 6) {
      throw std::invalid_argument("CSV: expected 6 fields per sweep row");
    }
    SweepRow row;
    row.seed = parse_u64(fields[0], "seed");
    row.demand_bps = parse_double(fields[1], "demand_bps");
    const auto scheme = scheme_from_name(fields[2]);
    if (!scheme) throw std::invalid_argument("CSV: bad scheme: " + fields[2]);
    row.scheme = *scheme;
    row.feasible = fields[3] == "1";
    if (row.feasible) row.total_power_w = parse_double(fields[4], "total_power_w");
    row.note = fields[5];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_summary_json(const Scenario& scenario,
                               const std::vector<SweepRow>& rows, int indent) {
  nlohmann::json summary;
  summary["scenario"] = scenario_json_value(scenario);

  std::vector<double> demands;
  std::vector<std::uint64_t> seeds;
  for (const auto& row : rows) {
    demands.push_back(row.demand_bps);
    seeds.push_back(row.seed);
  }
  const auto demand_list = sorted_unique(demands);
  const auto seed_list = sorted_unique(seeds);
  summary["demands_bps"] = demand_list;
  summary["seeds"] = seed_list;

  nlohmann::json per_demand = nlohmann::json::array();
  double time_sum = 0.0;
  for (double demand : demand_list) {
    for (Scheme scheme : {Scheme::kIfdma, Scheme::kLfdma}) {
      std::vector<double> totals;
      int considered = 0;
      for (const auto& row : rows) {
        if (row.demand_bps != demand || row.scheme != scheme) continue;
        ++considered;
        if (row.feasible) totals.push_back(row.total_power_w);
      }
      if (considered == 0) continue;
      std::sort(totals.begin(), totals.end());
      nlohmann::json entry;
      entry["demand_bps"] = demand;
      entry["scheme"] = scheme_name(scheme);
      entry["num_seeds"] = considered;
      entry["feasible_fraction"] =
          static_cast<double>(totals.size()) / considered;
      if (!totals.empty()) {
        entry["mean_total_power_w"] = mean(totals);
        entry["p10_total_power_w"] = percentile_sorted(totals, 0.10);
        entry["p90_total_power_w"] = percentile_sorted(totals, 0.90);
      }
      per_demand.push_back(std::move(entry));
    }
  }
  for (const auto& row : rows) time_sum += row.solve_time_s;
  summary["per_demand"] = std::move(per_demand);
  summary["mean_solve_time_s"] =
      rows.empty() ? 0.0 : time_sum / static_cast<double>(rows.size());
  return summary.dump(indent);
}

double max_supported_demand(const Instance& base, Scheme scheme,
                            double resolution_bps) {
  if (!(resolution_bps > 0.0)) {
    throw std::invalid_argument("max_supported_demand: resolution must be > 0");
  }
  auto feasible_at = [&](std::uint64_t steps) {
    Instance inst = base;
    inst.demands_bps.assign(inst.num_users,
                            static_cast<double>(steps) * resolution_bps);
    return scheme == Scheme::kIfdma ? ifdma_feasible(inst)
                                    : lfdma_feasible(inst);
  };
  if (!feasible_at(1)) return 0.0;
  // Exponential bracket, then bisection on the step grid. Feasibility is
  // monotone non-increasing in the demand, and the capacity at the power
  // caps is finite, so the doubling terminates.
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (feasible_at(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (feasible_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(lo) * resolution_bps;
}

std::vector<MaxDemandRow> run_max_demand(const Scenario& scenario,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<Scheme>& schemes,
                                         double resolution_bps,
                                         const SweepOptions& options) {
  if (seeds.empty() || schemes.empty()) {
    throw std::invalid_argument("run_max_demand: seeds and schemes must be non-empty");
  }
  const auto seed_list = sorted_unique(seeds);
  const auto scheme_list = canonical_schemes(schemes);
  const auto instances = sample_seed_instances(scenario, seed_list);

  std::vector<MaxDemandRow> rows;
  for (std::size_t si = 0; si < seed_list.size(); ++si) {
    for (Scheme scheme : scheme_list) {
      MaxDemandRow row;
      row.seed = seed_list[si];
      row.scheme = scheme;
      rows.push_back(std::move(row));
    }
  }
  run_jobs(rows.size(), options.threads, [&](std::size_t k) {
    MaxDemandRow& row = rows[k];
    const Instance& inst = instances[k / scheme_list.size()];
    try {
      row.max_demand_bps = max_supported_demand(inst, row.scheme, resolution_bps);
    } catch (const SolverGuardError& e) {
      row.max_demand_bps = 0.0;
      row.note = e.what();
    }
  });
  return rows;
}

std::string max_demand_rows_to_csv(const std::vector<MaxDemandRow>& rows) {
  std::string out = "seed,scheme,max_demand_bps,note\n";
  for (const MaxDemandRow& row : rows) {
    out += std::to_string(row.seed);
    out += ',';
    out += scheme_name(row.scheme);
    out += ',';
    out += format_double(row.max_demand_bps);
    out += ',';
    csv_append_field(out, row.note);
    out += '\n';
  }
  return out;
}

std::string max_demand_summary_json(const Scenario& scenario,
                                    const std::vector<MaxDemandRow>& rows,
                                    double resolution_bps, int indent) {
  nlohmann::json summary;
  summary["scenario"] = scenario_json_value(scenario);
  summary["resolution_bps"] = resolution_bps;

  std::vector<double> per_scheme[2];
  for (const auto& row : rows) {
    per_scheme[row.scheme == Scheme::kLfdma ? 1 : 0].push_back(
        row.max_demand_bps);
  }
  nlohmann::json schemes = nlohmann::json::object();
  for (int s = 0; s < 2; ++s) {
    if (per_scheme[s].empty()) continue;
    std::vector<double> sorted = per_scheme[s];
    std::sort(sorted.begin(), sorted.end());
    nlohmann::json entry;
    entry["num_seeds"] = sorted.size();
    entry["mean_bps"] = mean(sorted);
    entry["p10_bps"] = percentile_sorted(sorted, 0.10);
    entry["p90_bps"] = percentile_sorted(sorted, 0.90);
    schemes[std::string(scheme_name(s == 0 ? Scheme::kIfdma : Scheme::kLfdma))] =
        std::move(entry);
  }
  summary["schemes"] = std::move(schemes);
  if (!per_scheme[0].empty() && !per_scheme[1].empty()) {
    const double mean_ifdma = mean(per_scheme[0]);
    const double mean_lfdma = mean(per_scheme[1]);
    if (mean_ifdma > 0.0) {
      summary["mean_max_demand_ratio_lfdma_over_ifdma"] =
          mean_lfdma / mean_ifdma;
    }
  }
  return summary.dump(indent);
}

}  // namespace scfdma
