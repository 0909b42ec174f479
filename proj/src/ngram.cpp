// SPDX-License-Identifier: Apache-2.0
#include "mindhash/error.hpp"
#include "mindhash/predictor.hpp"

namespace mindhash::predictor {

namespace {
constexpr char kPad = '\x02';
}

NgramModel::NgramModel(int order, std::span<const std::string> passwords) : order_(order) {
  if (order < 1) throw Error(ErrorKind::Config, "n-gram order must be at least 1");
  for (const auto& pw : passwords) {
    // Targets 1..n-2: the final character is held out as in LSTM training.
    for (std::size_t t = 1; t + 1 < pw.size(); ++t) {
      auto& row = counts_[context_of(std::string_view(pw).substr(0, t))];
      if (row.empty()) row.assign(kAlphabetSize, 0);
      ++row[static_cast<std::size_t>(char_index(pw[t]))];
    }
  }
}

std::string NgramModel::context_of(std::string_view prefix) const {
  const auto k = static_cast<std::size_t>(order_);
  if (prefix.size() >= k) return std::string(prefix.substr(prefix.size() - k));
  return std::string(k - prefix.size(), kPad) + std::string(prefix);
}

Eigen::VectorXd NgramModel::distribution(std::string_view prefix) const {
  Eigen::VectorXd p = Eigen::VectorXd::Ones(kAlphabetSize);
  const auto it = counts_.find(context_of(prefix));
  if (it != counts_.end()) {
    for (int i = 0; i < kAlphabetSize; ++i) p[i] += it->second[static_cast<std::size_t>(i)];
  }
  return p / p.sum();
}

}  // namespace mindhash::predictor
