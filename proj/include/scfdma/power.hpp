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

#include <optional>
#include <span>

#include "scfdma/model.hpp"

namespace scfdma {

// Per-channel rate model. Implementations must be strictly increasing in
// power and return 0 at zero power; the solvers rely on monotonicity for
// bisection. Channels are 1-indexed.
class RateModel {
 public:
  virtual ~RateModel() = default;

  // Rate in bit/s achieved by `user` on `channel` at per-channel power
  // `power_w`.
  virtual double rate_bps(const Instance& inst, int user, int channel,
                          double power_w) const = 0;

  // Sum of rate_bps over `channels`; override when a batched evaluation is
  // cheaper (this sits inside the bisection inner loop).
  virtual double sum_rate_bps(const Instance& inst, int user,
                              std::span<const int> channels,
                              double power_w) const;
};

// B * log2(1 + p * g / sigma^2). Returns 0 at p = 0.
double shannon_rate_bps(double gain, double power_w, double bandwidth_hz,
                        double noise_power_w);

class ShannonRateModel final : public RateModel {
 public:
  double rate_bps(const Instance& inst, int user, int channel,
                  double power_w) const override;
  double sum_rate_bps(const Instance& inst, int user,
                      std::span<const int> channels,
                      double power_w) const override;
};

// The model used by all experiments unless a caller plugs in another one.
const RateModel& default_rate_model();

// Cap on the per-channel power of a user holding c channels:
// min(P^u / c, P^s).
double max_per_channel_power(int c, double user_limit_w, double peak_limit_w);

// Minimum equal per-channel power of one user on a fixed channel set.
struct UserCost {
  double per_channel_power_w = 0.0;
  double total_w = 0.0;  // c * per_channel_power_w
};

// Smallest per-channel power p with sum_j rate(i, j, p) >= d_i, subject to
// p <= min(P^u/c, P^s). Located by bisection on [0, pmax]; the bracket is
// shrunk until its width is <= max(1e-12 W, 1e-9 * pmax) and the upper end
// is returned, so the demand is always met by the result. Returns nullopt
// when even pmax cannot satisfy the demand.
std::optional<UserCost> min_power_for_demand(
    const Instance& inst, int user, std::span<const int> channels,
    const RateModel& model = default_rate_model());

// True iff the rate at the power cap meets the user's demand. Consistent
// with min_power_for_demand: feasible here iff that returns a value.
bool feasibility_check(const Instance& inst, int user,
                       std::span<const int> channels,
                       const RateModel& model = default_rate_model());

// Bracket width at which the bisection stops; exposed for tests that verify
// the bracketing post-condition.
double bisection_tolerance(double pmax);

}  // namespace scfdma
