// SPDX-License-Identifier: Apache-2.0
// Deliberately naive reference computations used only by tests.
#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>

namespace oracle {

// Matched characters under the Ratcliff/Obershelp recursion, found by
// trying every substring of `a` against `b`. Ties prefer the earliest
// start in `a`, then the earliest in `b`.
inline std::size_t ro_matches(std::string_view a, std::string_view b) {
  std::size_t best = 0, best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      if (k > best) {
        best = k;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best == 0) return 0;
  return best + ro_matches(a.substr(0, best_i), b.substr(0, best_j)) +
         ro_matches(a.substr(best_i + best), b.substr(best_j + best));
}

inline double ro_ratio(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(ro_matches(a, b)) / static_cast<double>(total);
}

// P[Bin(k, q) >= t] by summing every term directly.
inline double binomial_tail(int k, double q, int t) {
  double sum = 0.0;
  for (int i = t < 0 ? 0 : t; i <= k; ++i) {
    double choose = 1.0;
    for (int j = 1; j <= i; ++j) choose = choose * (k - i + j) / j;
    sum += choose * std::pow(q, i) * std::pow(1.0 - q, k - i);
  }
  return sum;
}

// Smallest (k, t) found by scanning every threshold of every k.
struct CueAnswer {
  int k = 0;
  int t = 0;
};

inline CueAnswer cue_search(double p, double n, double max_fpr, double min_tpr, int limit) {
  for (int k = 1; k <= limit; ++k) {
    for (int t = 0; t <= k; ++t) {
      if (binomial_tail(k, n, t) <= max_fpr) {
        if (binomial_tail(k, p, t) >= min_tpr) return {k, t};
        break;  // larger t only lowers the primed tail
      }
    }
  }
  return {};
}

}  // namespace oracle
