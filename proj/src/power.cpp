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

#include "scfdma/power.hpp"

#include <algorithm>
#include <cmath>

namespace scfdma {

double RateModel::sum_rate_bps(const Instance& inst, int user,
                               std::span<const int> channels,
                               double power_w) const {
  double sum = 0.0;
  for (int ch : channels) sum += rate_bps(inst, user, ch, power_w);
  return sum;
}

double shannon_rate_bps(double gain, double power_w, double bandwidth_hz,
                        double noise_power_w) {
  if (!(gain > 0.0) || !(bandwidth_hz > 0.0) || !(noise_power_w > 0.0)) {
    throw std::invalid_argument(
        "shannon_rate_bps: gain, bandwidth and noise power must be positive");
  }
  if (power_w < 0.0) {
    throw std::invalid_argument("shannon_rate_bps: power must be >= 0");
  }
  return bandwidth_hz * std::log2(1.0 + power_w * gain / noise_power_w);
}

double ShannonRateModel::rate_bps(const Instance& inst, int user, int channel,
                                  double power_w) const {
  return shannon_rate_bps(inst.gain(user, channel), power_w,
                          inst.channel_bandwidth_hz, inst.noise_power_w);
}

double ShannonRateModel::sum_rate_bps(const Instance& inst, int user,
                                      std::span<const int> channels,
                                      double power_w) const {
  const double inv_noise = 1.0 / inst.noise_power_w;
  double bits = 0.0;
  for (int ch : channels) {
    bits += std::log2(1.0 + power_w * inst.gain(user, ch) * inv_noise);
  }
  return inst.channel_bandwidth_hz * bits;
}

const RateModel& default_rate_model() {
  static const ShannonRateModel model;
  return model;
}

double max_per_channel_power(int c, double user_limit_w, double peak_limit_w) {
  if (c < 1) throw std::invalid_argument("max_per_channel_power: c >= 1");
  return std::min(user_limit_w / c, peak_limit_w);
}

double bisection_tolerance(double pmax) {
  return std::max(1e-12, 1e-9 * pmax);
}

std::optional<UserCost> min_power_for_demand(const Instance& inst, int user,
                                             std::span<const int> channels,
                                             const RateModel& model) {
  if (channels.empty()) {
    throw std::invalid_argument("min_power_for_demand: empty channel set");
  }
  const int c = static_cast<int>(channels.size());
  const double pmax = max_per_channel_power(c, inst.user_power_limit_w,
                                            inst.channel_peak_power_limit_w);
  const double demand = inst.demands_bps[user];
  if (model.sum_rate_bps(inst, user, channels, pmax) < demand) {
    return std::nullopt;
  }
  // Invariant: rate(hi) >= demand, rate(lo) < demand (or lo == 0).
  double lo = 0.0;
  double hi = pmax;
  const double tol = bisection_tolerance(pmax);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (model.sum_rate_bps(inst, user, channels, mid) >= demand) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return UserCost{hi, c * hi};
}

bool feasibility_check(const Instance& inst, int user,
                       std::span<const int> channels, const RateModel& model) {
  if (channels.empty()) {
    throw std::invalid_argument("feasibility_check: empty channel set");
  }
  const int c = static_cast<int>(channels.size());
  const double pmax = max_per_channel_power(c, inst.user_power_limit_w,
                                            inst.channel_peak_power_limit_w);
  return model.sum_rate_bps(inst, user, channels, pmax) >=
         inst.demands_bps[user];
}

}  // namespace scfdma
