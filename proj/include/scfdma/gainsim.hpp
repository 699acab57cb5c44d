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
#include <random>
#include <string>
#include <vector>

#include "scfdma/model.hpp"

namespace scfdma {

// Statistical channel generation parameters for a single uplink cell: users
// placed uniformly over the annulus [min_user_distance, cell_radius] around
// the base station, COST-231 Hata path loss per channel frequency,
// per-user log-normal shadowing, per-(user, channel) Rayleigh fading.
struct Scenario {
  double cell_radius_m = 1000.0;
  double carrier_frequency_hz = 2e9;
  int num_users = 10;
  int num_channels = 64;
  double channel_bandwidth_hz = 180e3;
  double bs_antenna_height_m = 200.0;
  double ms_antenna_height_m = 1.5;
  double min_user_distance_m = 50.0;
  double shadowing_sigma_db = 8.0;
  double noise_psd_dbm_hz = -174.0;
  double user_power_limit_w = 0.2;
  double channel_peak_power_limit_w = 0.01;
  double demand_bps = 400e3;  // uniform across users
  std::uint64_t seed = 1;
};

std::vector<std::string> validate_scenario(const Scenario& scenario);

// JSON keys mirror the fields with units in the names (cell_radius_m, ...).
// Missing keys keep the defaults above, so a config may be partial.
std::string scenario_to_json(const Scenario& scenario, int indent = 2);
Scenario scenario_from_json(const std::string& text);

// COST-231 Hata urban path loss in dB for distance d (km), frequency f
// (MHz), base-station antenna height h_b (m), mobile antenna height h_m (m):
//   46.3 + 33.9 log10 f - 13.82 log10 h_b - a(h_m)
//       + (44.9 - 6.55 log10 h_b) log10 d + C
// with a(h_m) = (1.1 log10 f - 0.7) h_m - (1.56 log10 f - 0.8) and C = 0
// (medium city). Throws on d <= 0; frequencies outside the nominal range are
// permitted (see cost231_frequency_in_range).
double cost231_path_loss_db(double distance_km, double frequency_mhz,
                            double bs_height_m, double ms_height_m);

// Nominal model validity range, 1500..2000 MHz.
bool cost231_frequency_in_range(double frequency_mhz);

// 10^((psd - 30) / 10) * B, converting dBm/Hz to watts over bandwidth B.
double noise_power_w(double psd_dbm_hz, double bandwidth_hz);

// Deterministic substream: mt19937_64 seeded by mixing (master seed, stream
// id) through splitmix64, with explicit transforms so draws are bit-exact
// across platforms (std::* distributions are not portable). Each user gets
// its own substream, so parallel generation reproduces the sequential
// output.
std::uint64_t splitmix64(std::uint64_t x);

class Substream {
 public:
  Substream(std::uint64_t master_seed, std::uint64_t stream_id);

  double uniform01();  // [0, 1), 53-bit resolution
  double normal(double mean, double stddev);  // Box-Muller, cosine branch
  double exponential_mean1();                 // -log(1 - u)

 private:
  std::mt19937_64 gen_;
};

struct SampleHooks {
  bool unit_fading = false;  // test hook: Rayleigh fading power F = 1
};

struct SampledInstance {
  Instance instance;
  std::vector<double> user_distance_m;
  // False when some channel's center frequency falls outside the nominal
  // COST-231 range; the gains are still produced.
  bool cost231_in_range = true;
};

// Draws a full problem instance. Per user i (substream i): distance with
// radial CDF proportional to r^2 on [min_user_distance, cell_radius], one
// shadowing draw S ~ Normal(0, sigma dB), then one fading power
// F ~ Exponential(mean 1) per channel in ascending channel order. Channel j
// (1..N) sits at f_j = f_c + (j - (N+1)/2) B and
//   g_{i,j} = 10^(-(PL(d_i, f_j) + S_i) / 10) * F_{i,j}.
SampledInstance sample_instance(const Scenario& scenario,
                                const SampleHooks& hooks = {});

}  // namespace scfdma
