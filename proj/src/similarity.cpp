// SPDX-License-Identifier: Apache-2.0
#include "mindhash/similarity.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace mindhash::metrics {

MatchingBlock longest_match(std::string_view a, std::string_view b, std::size_t alo,
                            std::size_t ahi, std::size_t blo, std::size_t bhi) {
  // run[j + 1] = length of the common suffix of a[..i] and b[..j].
  MatchingBlock best{alo, blo, 0};
  std::vector<std::size_t> run(bhi - blo + 1, 0);
  std::vector<std::size_t> next(bhi - blo + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t j = blo; j < bhi; ++j) {
      if (a[i] != b[j]) continue;
      const std::size_t k = run[j - blo] + 1;
      next[j - blo + 1] = k;
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    std::swap(run, next);
  }
  return best;
}

std::vector<MatchingBlock> matching_blocks(std::string_view a, std::string_view b) {
  std::vector<MatchingBlock> blocks;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> pending{
      {0, a.size(), 0, b.size()}};
  while (!pending.empty()) {
    const auto [alo, ahi, blo, bhi] = pending.back();
    pending.pop_back();
    const MatchingBlock m = longest_match(a, b, alo, ahi, blo, bhi);
    if (m.size == 0) continue;
    blocks.push_back(m);
    if (alo < m.a && blo < m.b) pending.emplace_back(alo, m.a, blo, m.b);
    if (m.a + m.size < ahi && m.b + m.size < bhi) {
      pending.emplace_back(m.a + m.size, ahi, m.b + m.size, bhi);
    }
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const MatchingBlock& x, const MatchingBlock& y) { return x.a < y.a; });
  return blocks;
}

double similarity_ratio(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  const auto blocks = matching_blocks(a, b);
  const std::size_t matched = std::accumulate(
      blocks.begin(), blocks.end(), std::size_t{0},
      [](std::size_t sum, const MatchingBlock& m) { return sum + m.size; });
  return 2.0 * static_cast<double>(matched) / static_cast<double>(total);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

}  // namespace mindhash::metrics
