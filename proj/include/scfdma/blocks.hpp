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
#include <vector>

#include "scfdma/model.hpp"

namespace scfdma {

// All feasible channel blocks for a given (M, N), in enumeration order.
struct BlockList {
  std::vector<ChannelBlock> blocks;
  int count() const { return static_cast<int>(blocks.size()); }
};

namespace detail {
inline void check_block_enum_args(int num_users, int num_channels) {
  if (num_users < 1 || num_channels < num_users) {
    throw std::invalid_argument("block enumeration: need 1 <= M <= N");
  }
}
}  // namespace detail

// Streams every feasible block in the canonical nested-loop order (c outer,
// then s, then q). c = 1 uses a single sub-block, so only q varies there.
// Downstream consumers (the block solver) process blocks one at a time, so
// the list never has to be materialized.
template <typename Visitor>
void for_each_block(int num_users, int num_channels, Visitor&& visit) {
  detail::check_block_enum_args(num_users, num_channels);
  const int m = num_users;
  const int n = num_channels;
  for (int q = 0; q <= n - m; ++q) {
    visit(ChannelBlock{1, 0, q});
  }
  for (int c = 2; c <= n / m; ++c) {
    const int s_max = (n - c * m) / (c - 1);
    for (int s = 0; s <= s_max; ++s) {
      const int len = block_length(c, s, m);
      for (int q = 0; q <= n - len; ++q) {
        visit(ChannelBlock{c, s, q});
      }
    }
  }
}

// Materialized form of for_each_block.
BlockList enumerate_blocks(int num_users, int num_channels);

// Independent oracle: counts all (c, s, q) triples satisfying the
// ChannelBlock invariants by direct triple iteration, without reusing the
// nested-loop ranges above.
std::int64_t count_blocks_bruteforce(int num_users, int num_channels);

}  // namespace scfdma
