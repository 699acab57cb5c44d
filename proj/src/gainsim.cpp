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

#include "scfdma/gainsim.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace scfdma {

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> violations;
  auto positive = [&](double x, const char* name) {
    if (!(std::isfinite(x) && x > 0.0)) {
      violations.push_back(std::string(name) + " must be positive");
    }
  };
  positive(sc.cell_radius_m, "cell_radius_m");
  positive(sc.carrier_frequency_hz, "carrier_frequency_hz");
  positive(sc.channel_bandwidth_hz, "channel_bandwidth_hz");
  positive(sc.bs_antenna_height_m, "bs_antenna_height_m");
  positive(sc.ms_antenna_height_m, "ms_antenna_height_m");
  positive(sc.min_user_distance_m, "min_user_distance_m");
  positive(sc.shadowing_sigma_db, "shadowing_sigma_db");
  positive(sc.user_power_limit_w, "user_power_limit_w");
  positive(sc.channel_peak_power_limit_w, "channel_peak_power_limit_w");
  positive(sc.demand_bps, "demand_bps");
  if (sc.num_users < 1) violations.push_back("users must be >= 1");
  if (sc.num_channels < sc.num_users)
    violations.push_back("channels must be >= users");
  if (!(sc.min_user_distance_m < sc.cell_radius_m)) {
    violations.push_back("min_user_distance_m must be < cell_radius_m");
  }
  if (!std::isfinite(sc.noise_psd_dbm_hz)) {
    violations.push_back("noise_psd_dbm_hz must be finite");
  }
  return violations;
}

std::string scenario_to_json(const Scenario& sc, int indent) {
  nlohmann::json j;
  j["cell_radius_m"] = sc.cell_radius_m;
  j["carrier_frequency_hz"] = sc.carrier_frequency_hz;
  j["users"] = sc.num_users;
  j["channels"] = sc.num_channels;
  j["channel_bandwidth_hz"] = sc.channel_bandwidth_hz;
  j["bs_antenna_height_m"] = sc.bs_antenna_height_m;
  j["ms_antenna_height_m"] = sc.ms_antenna_height_m;
  j["min_user_distance_m"] = sc.min_user_distance_m;
  j["shadowing_sigma_db"] = sc.shadowing_sigma_db;
  j["noise_psd_dbm_hz"] = sc.noise_psd_dbm_hz;
  j["user_power_limit_w"] = sc.user_power_limit_w;
  j["channel_peak_power_limit_w"] = sc.channel_peak_power_limit_w;
  j["demand_bps"] = sc.demand_bps;
  j["seed"] = sc.seed;
  return j.dump(indent);
}

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON parse error: ") +
                                e.what());
  }
  Scenario sc;
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("cell_radius_m", sc.cell_radius_m);
    get("carrier_frequency_hz", sc.carrier_frequency_hz);
    get("users", sc.num_users);
    get("channels", sc.num_channels);
    get("channel_bandwidth_hz", sc.channel_bandwidth_hz);
    get("bs_antenna_height_m", sc.bs_antenna_height_m);
    get("ms_antenna_height_m", sc.ms_antenna_height_m);
    get("min_user_distance_m", sc.min_user_distance_m);
    get("shadowing_sigma_db", sc.shadowing_sigma_db);
    get("noise_psd_dbm_hz", sc.noise_psd_dbm_hz);
    get("user_power_limit_w", sc.user_power_limit_w);
    get("channel_peak_power_limit_w", sc.channel_peak_power_limit_w);
    get("demand_bps", sc.demand_bps);
    get("seed", sc.seed);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  return sc;
}

double cost231_path_loss_db(double distance_km, double frequency_mhz,
                            double bs_height_m, double ms_height_m) {
  if (!(distance_km > 0.0)) {
    throw std::invalid_argument("cost231_path_loss_db: distance must be > 0");
  }
  const double log_f = std::log10(frequency_mhz);
  const double log_hb = std::log10(bs_height_m);
  const double mobile_correction =
      (1.1 * log_f - 0.7) * ms_height_m - (1.56 * log_f - 0.8);
  const double city_correction = 0.0;  // medium city
  return 46.3 + 33.9 * log_f - 13.82 * log_hb - mobile_correction +
         (44.9 - 6.55 * log_hb) * std::log10(distance_km) + city_correction;
}

bool cost231_frequency_in_range(double frequency_mhz) {
  return frequency_mhz >= 1500.0 && frequency_mhz <= 2000.0;
}

double noise_power_w(double psd_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("noise_power_w: bandwidth must be > 0");
  }
  return std::pow(10.0, (psd_dbm_hz - 30.0) / 10.0) * bandwidth_hz;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Substream::Substream(std::uint64_t master_seed, std::uint64_t stream_id)
    : gen_(splitmix64(master_seed ^
                      splitmix64(stream_id * 0x9E3779B97F4A7C15ULL + 1))) {}

double Substream::uniform01() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Substream::normal(double mean, double stddev) {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

double Substream::exponential_mean1() {
  return -std::log(1.0 - uniform01());
}

SampledInstance sample_instance(const Scenario& sc, const SampleHooks& hooks) {
  const auto violations = validate_scenario(sc);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }

  const int m = sc.num_users;
  const int n = sc.num_channels;
  SampledInstance sampled;
  Instance& inst = sampled.instance;
  inst.num_users = m;
  inst.num_channels = n;
  inst.demands_bps.assign(m, sc.demand_bps);
  inst.gains.resize(static_cast<std::size_t>(m) * n);
  inst.noise_power_w = noise_power_w(sc.noise_psd_dbm_hz, sc.channel_bandwidth_hz);
  inst.channel_bandwidth_hz = sc.channel_bandwidth_hz;
  inst.user_power_limit_w = sc.user_power_limit_w;
  inst.channel_peak_power_limit_w = sc.channel_peak_power_limit_w;
  sampled.user_distance_m.resize(m);

  // Channel center frequencies, centered on the carrier.
  std::vector<double> freq_mhz(n);
  sampled.cost231_in_range = true;
  for (int j = 1; j <= n; ++j) {
    const double f_hz =
        sc.carrier_frequency_hz + (j - (n + 1) / 2.0) * sc.channel_bandwidth_hz;
    freq_mhz[j - 1] = f_hz / 1e6;
    if (!cost231_frequency_in_range(freq_mhz[j - 1])) {
      sampled.cost231_in_range = false;
    }
  }

  const double r_min_sq = sc.min_user_distance_m * sc.min_user_distance_m;
  const double r_max_sq = sc.cell_radius_m * sc.cell_radius_m;
  for (int i = 0; i < m; ++i) {
    Substream stream(sc.seed, static_cast<std::uint64_t>(i));
    // Uniform over the annulus: radial CDF proportional to r^2.
    const double r =
        std::sqrt(r_min_sq + stream.uniform01() * (r_max_sq - r_min_sq));
    sampled.user_distance_m[i] = r;
    const double shadow_db = stream.normal(0.0, sc.shadowing_sigma_db);
    for (int j = 1; j <= n; ++j) {
      const double fading =
          hooks.unit_fading ? 1.0 : stream.exponential_mean1();
      const double loss_db =
          cost231_path_loss_db(r / 1000.0, freq_mhz[j - 1],
                               sc.bs_antenna_height_m, sc.ms_antenna_height_m) +
          shadow_db;
      inst.gain(i, j) = std::pow(10.0, -loss_db / 10.0) * fading;
    }
  }
  return sampled;
}

}  // namespace scfdma
