// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace mindhash::metrics {

struct MatchingBlock {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

/// Longest common substring of a[alo,ahi) and b[blo,bhi). Among equally
/// long matches the one starting earliest in a wins, then earliest in b.
MatchingBlock longest_match(std::string_view a, std::string_view b, std::size_t alo,
                            std::size_t ahi, std::size_t blo, std::size_t bhi);

/// Ratcliff/Obershelp decomposition: the longest match, then recursively
/// the unmatched pieces on either side of it. Blocks come back in order.
std::vector<MatchingBlock> matching_blocks(std::string_view a, std::string_view b);

/// 2M / (|a| + |b|), with two empty strings defined as identical.
double similarity_ratio(std::string_view a, std::string_view b);

/// Edit distance with unit costs.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace mindhash::metrics
