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

#include "scfdma/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace scfdma {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  const int m = inst.num_users;
  const int n = inst.num_channels;
  if (m < 1) violations.push_back("M >= 1 violated: M = " + std::to_string(m));
  if (n < m) {
    violations.push_back("N >= M violated: N = " + std::to_string(n) +
                         ", M = " + std::to_string(m));
  }
  if (inst.demands_bps.size() != static_cast<std::size_t>(std::max(m, 0))) {
    violations.push_back("demands_bps must have one entry per user");
  } else {
    for (int i = 0; i < m; ++i) {
      if (!finite_positive(inst.demands_bps[i])) {
        violations.push_back("demands > 0 violated for user " +
                             std::to_string(i + 1));
        break;
      }
    }
  }
  const std::size_t want =
      static_cast<std::size_t>(std::max(m, 0)) * static_cast<std::size_t>(std::max(n, 0));
  if (inst.gains.size() != want) {
    violations.push_back("gains must be an M x N matrix");
  } else {
    for (double g : inst.gains) {
      if (!finite_positive(g)) {
        violations.push_back("gains > 0 violated");
        break;
      }
    }
  }
  if (!finite_positive(inst.noise_power_w))
    violations.push_back("noise power sigma^2 > 0 violated");
  if (!finite_positive(inst.channel_bandwidth_hz))
    violations.push_back("channel bandwidth B > 0 violated");
  if (!finite_positive(inst.user_power_limit_w))
    violations.push_back("user power limit P^u > 0 violated");
  if (!finite_positive(inst.channel_peak_power_limit_w))
    violations.push_back("channel peak power limit P^s > 0 violated");
  return violations;
}

int block_length(int c, int s, int num_users) {
  if (c < 1 || s < 0 || num_users < 1) {
    throw std::invalid_argument("block_length: need c >= 1, s >= 0, M >= 1");
  }
  return (c - 1) * (num_users + s) + num_users;
}

bool block_valid(const ChannelBlock& b, int num_users, int num_channels) {
  const int m = num_users;
  const int n = num_channels;
  if (m < 1 || n < m) return false;
  if (b.c < 1 || b.c > n / m) return false;
  if (b.c == 1) {
    if (b.s != 0) return false;
  } else {
    if (b.s < 0 || b.s > (n - b.c * m) / (b.c - 1)) return false;
  }
  const int len = block_length(b.c, b.s, m);
  return b.q >= 0 && b.q <= n - len;
}

std::vector<int> channels_of(const ChannelBlock& b, int position,
                             int num_users) {
  if (position < 1 || position > num_users) {
    throw std::invalid_argument("channels_of: position out of range 1..M");
  }
  if (b.c < 1 || b.s < 0 || b.q < 0 || (b.c == 1 && b.s != 0)) {
    throw std::invalid_argument("channels_of: malformed channel block");
  }
  std::vector<int> channels(b.c);
  for (int l = 0; l < b.c; ++l) {
    channels[l] = b.q + l * (num_users + b.s) + position;
  }
  return channels;
}

bool positions_valid(const std::vector<int>& positions, int num_users) {
  if (positions.size() != static_cast<std::size_t>(num_users)) return false;
  std::vector<char> seen(num_users + 1, 0);
  for (int p : positions) {
    if (p < 1 || p > num_users || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

std::string instance_to_json(const Instance& inst, int indent) {
  nlohmann::json j;
  j["M"] = inst.num_users;
  j["N"] = inst.num_channels;
  j["demands_bps"] = inst.demands_bps;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < inst.num_users; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int ch = 1; ch <= inst.num_channels; ++ch) row.push_back(inst.gain(i, ch));
    rows.push_back(std::move(row));
  }
  j["gains"] = std::move(rows);
  j["noise_power_w"] = inst.noise_power_w;
  j["channel_bandwidth_hz"] = inst.channel_bandwidth_hz;
  j["user_power_limit_w"] = inst.user_power_limit_w;
  j["channel_peak_power_limit_w"] = inst.channel_peak_power_limit_w;
  return j.dump(indent);
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON parse error: ") +
                                e.what());
  }
  Instance inst;
  try {
    inst.num_users = j.at("M").get<int>();
    inst.num_channels = j.at("N").get<int>();
    inst.demands_bps = j.at("demands_bps").get<std::vector<double>>();
    const auto& rows = j.at("gains");
    if (!rows.is_array() ||
        rows.size() != static_cast<std::size_t>(inst.num_users)) {
      throw std::invalid_argument("instance JSON: gains must be M rows");
    }
    inst.gains.reserve(static_cast<std::size_t>(inst.num_users) *
                       inst.num_channels);
    for (const auto& row : rows) {
      auto vals = row.get<std::vector<double>>();
      if (vals.size() != static_cast<std::size_t>(inst.num_channels)) {
        throw std::invalid_argument("instance JSON: gains rows must have N entries");
      }
      inst.gains.insert(inst.gains.end(), vals.begin(), vals.end());
    }
    inst.noise_power_w = j.at("noise_power_w").get<double>();
    inst.channel_bandwidth_hz = j.at("channel_bandwidth_hz").get<double>();
    inst.user_power_limit_w = j.at("user_power_limit_w").get<double>();
    inst.channel_peak_power_limit_w =
        j.at("channel_peak_power_limit_w").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  return inst;
}

}  // namespace scfdma
