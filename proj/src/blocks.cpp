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

#include "scfdma/blocks.hpp"

namespace scfdma {

BlockList enumerate_blocks(int num_users, int num_channels) {
  BlockList list;
  for_each_block(num_users, num_channels,
                 [&](const ChannelBlock& b) { list.blocks.push_back(b); });
  return list;
}

std::int64_t count_blocks_bruteforce(int num_users, int num_channels) {
  detail::check_block_enum_args(num_users, num_channels);
  std::int64_t count = 0;
  for (int c = 1; c <= num_channels; ++c) {
    for (int s = 0; s <= num_channels; ++s) {
      for (int q = 0; q <= num_channels; ++q) {
        if (block_valid(ChannelBlock{c, s, q}, num_users, num_channels)) {
          ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace scfdma
