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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scfdma/blocks.hpp"
#include "scfdma/experiments.hpp"
#include "scfdma/gainsim.hpp"
#include "scfdma/lfdma.hpp"
#include "scfdma/model.hpp"
#include "scfdma/mpca.hpp"

namespace {

using namespace scfdma;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

// Accepts "start:step:stop" (inclusive sweep) or a comma-separated list.
std::vector<double> parse_demands(const std::string& text) {
  std::vector<double> demands;
  auto parse_one = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad demand value: " + s);
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) {
      throw std::invalid_argument("demand range must be start:step:stop");
    }
    const double start = parse_one(parts[0]);
    const double step = parse_one(parts[1]);
    const double stop = parse_one(parts[2]);
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("demand range must satisfy step > 0, stop >= start");
    }
    for (double d = start; d <= stop + 1e-9 * step; d += step) demands.push_back(d);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) demands.push_back(parse_one(part));
  }
  if (demands.empty()) throw std::invalid_argument("no demands given");
  return demands;
}

std::vector<Scheme> parse_schemes(const std::string& text) {
  std::vector<Scheme> schemes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto scheme = scheme_from_name(part);
    if (!scheme) throw std::invalid_argument("unknown scheme: " + part);
    schemes.push_back(*scheme);
  }
  if (schemes.empty()) throw std::invalid_argument("no schemes given");
  return schemes;
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds(count);
  for (std::uint64_t i = 0; i < count; ++i) seeds[i] = i + 1;
  return seeds;
}

Scenario load_scenario(const std::string& path) {
  const Scenario scenario = scenario_from_json(read_file(path));
  const auto violations = validate_scenario(scenario);
  if (!violations.empty()) {
    std::string msg = "invalid scenario config:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  return scenario;
}

Instance load_instance(const std::string& path) {
  const Instance inst = instance_from_json(read_file(path));
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  return inst;
}

void cmd_enumerate_blocks(int users, int channels) {
  std::cout << "c,s,q,L\n";
  std::int64_t count = 0;
  for_each_block(users, channels, [&](const ChannelBlock& b) {
    std::cout << b.c << ',' << b.s << ',' << b.q << ','
              << block_length(b.c, b.s, users) << '\n';
    ++count;
  });
  std::cout << "K=" << count << '\n';
}

void cmd_gen_scenario(const std::string& config_path, const std::string& out_path,
                      std::int64_t seed_override) {
  Scenario scenario = load_scenario(config_path);
  if (seed_override >= 0) scenario.seed = static_cast<std::uint64_t>(seed_override);
  const SampledInstance sampled = sample_instance(scenario);
  if (!sampled.cost231_in_range) {
    std::cerr << "warning: some channel frequencies fall outside the nominal "
                 "COST-231 range of 1500..2000 MHz\n";
  }
  write_file(out_path, instance_to_json(sampled.instance) + "\n");
  std::cout << "wrote " << out_path << " (M=" << sampled.instance.num_users
            << ", N=" << sampled.instance.num_channels
            << ", seed=" << scenario.seed << ")\n";
}

void print_solution_text(double total_w,
                         const std::vector<double>& per_channel_w,
                         const SolveStats& stats) {
  std::cout << "total power (mW): " << format_double(total_w * 1e3) << '\n';
  std::cout << "per-user channel power (mW):";
  for (double p : per_channel_w) std::cout << ' ' << format_double(p * 1e3);
  std::cout << '\n';
  std::cout << "candidates examined: " << stats.blocks_examined
            << ", feasible: " << stats.blocks_feasible << '\n';
  std::cout << "solve time (s): " << stats.wall_time_s << '\n';
}

void cmd_solve(const std::string& instance_path, const std::string& scheme_text,
               bool as_json, int threads) {
  const Instance inst = load_instance(instance_path);
  const auto scheme = scheme_from_name(scheme_text);
  if (!scheme) throw std::invalid_argument("unknown scheme: " + scheme_text);
  SolveOptions options;
  options.threads = threads;

  nlohmann::json j;
  j["scheme"] = scheme_name(*scheme);
  if (*scheme == Scheme::kIfdma) {
    const SolveReport report = mpca(inst, options);
    j["feasible"] = report.result.has_value();
    if (report.result) {
      const AllocationResult& r = *report.result;
      j["block"] = {{"c", r.allocation.block.c},
                    {"s", r.allocation.block.s},
                    {"q", r.allocation.block.q}};
      j["positions"] = r.allocation.positions;
      j["per_user_channel_power_w"] = r.per_user_channel_power_w;
      j["total_power_w"] = r.total_power_w;
    }
    j["blocks_examined"] = report.stats.blocks_examined;
    j["blocks_feasible"] = report.stats.blocks_feasible;
    j["solve_time_s"] = report.stats.wall_time_s;
    if (as_json) {
      std::cout << j.dump(2) << '\n';
      return;
    }
    std::cout << "scheme: ifdma\n";
    if (!report.result) {
      std::cout << "infeasible: no channel block admits a feasible assignment\n";
      return;
    }
    const AllocationResult& r = *report.result;
    std::cout << "block: c=" << r.allocation.block.c
              << " s=" << r.allocation.block.s << " q=" << r.allocation.block.q
              << " (L="
              << block_length(r.allocation.block.c, r.allocation.block.s,
                              inst.num_users)
              << ")\n";
    std::cout << "positions (user -> sub-block slot):";
    for (int p : r.allocation.positions) std::cout << ' ' << p;
    std::cout << '\n';
    print_solution_text(r.total_power_w, r.per_user_channel_power_w,
                        report.stats);
  } else {
    const LfdmaReport report = lfdma_optimal(inst, options);
    j["feasible"] = report.result.has_value();
    if (report.result) {
      const ContiguousAllocationResult& r = *report.result;
      nlohmann::json intervals = nlohmann::json::array();
      for (const auto& iv : r.intervals) {
        intervals.push_back({{"start", iv.start}, {"length", iv.length}});
      }
      j["intervals"] = std::move(intervals);
      j["per_user_channel_power_w"] = r.per_user_channel_power_w;
      j["total_power_w"] = r.total_power_w;
    }
    j["candidates_examined"] = report.stats.blocks_examined;
    j["candidates_feasible"] = report.stats.blocks_feasible;
    j["solve_time_s"] = report.stats.wall_time_s;
    if (as_json) {
      std::cout << j.dump(2) << '\n';
      return;
    }
    std::cout << "scheme: lfdma\n";
    if (!report.result) {
      std::cout << "infeasible: no disjoint contiguous assignment meets the demands\n";
      return;
    }
    const ContiguousAllocationResult& r = *report.result;
    std::cout << "intervals (user -> [start, end]):";
    for (const auto& iv : r.intervals) {
      std::cout << " [" << iv.start << ',' << iv.start + iv.length - 1 << ']';
    }
    std::cout << '\n';
    print_solution_text(r.total_power_w, r.per_user_channel_power_w,
                        report.stats);
  }
}

void cmd_sweep_demand(const std::string& config_path, const std::string& demands_text,
                      std::uint64_t seeds, const std::string& schemes_text,
                      const std::string& out_path, const std::string& summary_path,
                      int threads) {
  const Scenario scenario = load_scenario(config_path);
  const auto demands = parse_demands(demands_text);
  const auto schemes = parse_schemes(schemes_text);
  SweepOptions options;
  options.threads = threads;
  const auto rows = run_sweep(scenario, demands, seed_range(seeds), schemes, options);
  write_file(out_path, sweep_rows_to_csv(rows));
  std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
  if (!summary_path.empty()) {
    write_file(summary_path, sweep_summary_json(scenario, rows) + "\n");
    std::cout << "wrote summary to " << summary_path << '\n';
  }
}

void cmd_max_demand(const std::string& config_path, std::uint64_t seeds,
                    const std::string& schemes_text, double resolution,
                    const std::string& out_path, const std::string& summary_path,
                    int threads) {
  const Scenario scenario = load_scenario(config_path);
  const auto schemes = parse_schemes(schemes_text);
  SweepOptions options;
  options.threads = threads;
  const auto rows =
      run_max_demand(scenario, seed_range(seeds), schemes, resolution, options);
  write_file(out_path, max_demand_rows_to_csv(rows));
  std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
  if (!summary_path.empty()) {
    write_file(summary_path,
               max_demand_summary_json(scenario, rows, resolution) + "\n");
    std::cout << "wrote summary to " << summary_path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Minimum sum-power channel allocation for the SC-FDMA uplink: exact "
      "interleaved (IFDMA) solver, exact localized (LFDMA) baseline, channel "
      "simulator and experiment sweeps"};
  app.require_subcommand(1);

  auto* enum_cmd =
      app.add_subcommand("enumerate-blocks", "List every feasible channel block");
  int users = 0, channels = 0;
  enum_cmd->add_option("--users", users, "Number of users M")->required();
  enum_cmd->add_option("--channels", channels, "Number of channels N")->required();
  enum_cmd->callback([&] { cmd_enumerate_blocks(users, channels); });

  auto* gen_cmd = app.add_subcommand(
      "gen-scenario", "Sample a problem instance from a scenario config");
  std::string gen_config, gen_out;
  std::int64_t gen_seed = -1;
  gen_cmd->add_option("--config", gen_config, "Scenario JSON config")->required();
  gen_cmd->add_option("--out", gen_out, "Output instance JSON path")->required();
  gen_cmd->add_option("--seed", gen_seed, "Override the config seed");
  gen_cmd->callback([&] { cmd_gen_scenario(gen_config, gen_out, gen_seed); });

  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  std::string solve_instance, solve_scheme = "ifdma";
  bool solve_json = false;
  int solve_threads = 1;
  solve_cmd->add_option("--instance", solve_instance, "Instance JSON path")->required();
  solve_cmd->add_option("--scheme", solve_scheme, "ifdma or lfdma");
  solve_cmd->add_flag("--json", solve_json, "Machine-readable output");
  solve_cmd->add_option("--threads", solve_threads, "Worker threads");
  solve_cmd->callback(
      [&] { cmd_solve(solve_instance, solve_scheme, solve_json, solve_threads); });

  auto* sweep_cmd = app.add_subcommand(
      "sweep-demand", "Solve both schemes over a demand sweep and seeds");
  std::string sweep_config, sweep_demands, sweep_schemes = "ifdma,lfdma";
  std::string sweep_out, sweep_summary;
  std::uint64_t sweep_seeds = 50;
  int sweep_threads = 1;
  sweep_cmd->add_option("--config", sweep_config, "Scenario JSON config")->required();
  sweep_cmd->add_option("--demands", sweep_demands,
                        "start:step:stop (bit/s) or comma list")->required();
  sweep_cmd->add_option("--seeds", sweep_seeds, "Number of seeds (1..S)");
  sweep_cmd->add_option("--schemes", sweep_schemes, "Comma list: ifdma,lfdma");
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();
  sweep_cmd->add_option("--summary", sweep_summary, "Optional summary JSON path");
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads");
  sweep_cmd->callback([&] {
    cmd_sweep_demand(sweep_config, sweep_demands, sweep_seeds, sweep_schemes,
                     sweep_out, sweep_summary, sweep_threads);
  });

  auto* max_cmd = app.add_subcommand(
      "max-demand", "Largest supported uniform demand per seed and scheme");
  std::string max_config, max_schemes = "ifdma,lfdma", max_out, max_summary;
  std::uint64_t max_seeds = 50;
  double max_resolution = 10000.0;
  int max_threads = 1;
  max_cmd->add_option("--config", max_config, "Scenario JSON config")->required();
  max_cmd->add_option("--seeds", max_seeds, "Number of seeds (1..S)");
  max_cmd->add_option("--schemes", max_schemes, "Comma list: ifdma,lfdma");
  max_cmd->add_option("--resolution", max_resolution, "Demand grid step (bit/s)");
  max_cmd->add_option("--out", max_out, "Output CSV path")->required();
  max_cmd->add_option("--summary", max_summary, "Optional summary JSON path");
  max_cmd->add_option("--threads", max_threads, "Worker threads");
  max_cmd->callback([&] {
    cmd_max_demand(max_config, max_seeds, max_schemes, max_resolution, max_out,
                   max_summary, max_threads);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const scfdma::SolverGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
