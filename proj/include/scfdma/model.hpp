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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scfdma {

// Thrown when a solver refuses an input that exceeds its designed scale
// (factorial or subset enumeration guards). Distinct from invalid_argument so
// callers can map it to a dedicated exit code.
class SolverGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative slack applied to the per-channel power caps when checking
// feasibility of a computed power value. Bisection returns values at the cap
// boundary within floating-point error.
inline constexpr double kPowerCapTolerance = 1e-9;

// Uplink Min-Power problem input. Users are 0-indexed in the API; channels
// are 1-indexed everywhere (API, file formats, CLI output).
struct Instance {
  int num_users = 0;     // M
  int num_channels = 0;  // N
  std::vector<double> demands_bps;          // d_i, one per user
  std::vector<double> gains;                // g_{i,j}, row-major M x N, linear
  double noise_power_w = 0.0;               // sigma^2 = noise PSD * bandwidth
  double channel_bandwidth_hz = 0.0;        // B
  double user_power_limit_w = 0.0;          // P^u, total budget per user
  double channel_peak_power_limit_w = 0.0;  // P^s, per-channel cap

  // `channel` is 1-indexed.
  double gain(int user, int channel) const {
    return gains[static_cast<std::size_t>(user) * num_channels + channel - 1];
  }
  double& gain(int user, int channel) {
    return gains[static_cast<std::size_t>(user) * num_channels + channel - 1];
  }
};

// Returns one message per violated Instance invariant; empty means valid.
std::vector<std::string> validate_instance(const Instance& instance);

// Interleaved layout parameters. A block is c sub-blocks of M consecutive
// channels each, neighbouring sub-blocks separated by s unused channels, the
// whole segment shifted q channels from the left edge of the spectrum.
// s is stored as 0 whenever c == 1 (a single sub-block has no interspace).
struct ChannelBlock {
  int c = 1;  // channels allocated per user (= number of sub-blocks)
  int s = 0;  // interspace between neighbouring sub-blocks
  int q = 0;  // left shift of the segment

  friend bool operator==(const ChannelBlock&, const ChannelBlock&) = default;
};

// Length of the occupied segment: c sub-blocks of M channels plus c-1
// interspaces of s channels, i.e. (c-1)*(M+s) + M.
int block_length(int c, int s, int num_users);

// Checks the ChannelBlock invariants against a given problem size.
bool block_valid(const ChannelBlock& block, int num_users, int num_channels);

// The c channels (1-indexed, ascending) used by the user sitting at
// `position` (1..M) of every sub-block: q + (l-1)*(M+s) + position, l = 1..c.
// Consecutive members differ by exactly M+s.
std::vector<int> channels_of(const ChannelBlock& block, int position,
                             int num_users);

// A complete interleaved channel assignment: a block plus the sub-block
// position of every user. positions[i] is user i's slot in 1..M.
struct Allocation {
  ChannelBlock block;
  std::vector<int> positions;
};

// Returns true iff `positions` is a permutation of 1..M.
bool positions_valid(const std::vector<int>& positions, int num_users);

struct AllocationResult {
  Allocation allocation;
  // Per-channel transmit power of each user; a user sends with equal power
  // on all of its c channels.
  std::vector<double> per_user_channel_power_w;
  double total_power_w = 0.0;  // sum over users of c * p_i
};

// JSON (de)serialization of Instance. Schema:
//   {M, N, demands_bps: array[M], gains: array[M][N], noise_power_w,
//    channel_bandwidth_hz, user_power_limit_w, channel_peak_power_limit_w}
// Powers are in watts, rates in bit/s, gains linear. Throws
// std::invalid_argument on malformed documents.
std::string instance_to_json(const Instance& instance, int indent = 2);
Instance instance_from_json(const std::string& text);

}  // namespace scfdma
