// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <sstream>

#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/security_lab.hpp"

namespace mindhash::lab {

namespace {

constexpr char kFirstPrintable = 0x20;
constexpr int kPrintableCount = 95;

std::size_t guess_length(std::span<const Observation> observed, Rng& rng) {
  if (observed.empty()) return static_cast<std::size_t>(rng.between(8, 16));
  return observed[rng.below(observed.size())].password.size();
}

std::string uniform_guess(std::span<const Observation> observed, Rng& rng) {
  const std::size_t length = guess_length(observed, rng);
  std::string out;
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(static_cast<char>(kFirstPrintable + rng.below(kPrintableCount)));
  }
  return out;
}

class UniformRandom final : public Adversary {
 public:
  std::string_view id() const override { return "uniform_random"; }
  std::string guess(std::span<const Observation> observed, std::string_view,
                    Rng& rng) const override {
    return uniform_guess(observed, rng);
  }
};

// Draws characters from the empirical distribution of observed passwords.
class CharsetAwareRandom final : public Adversary {
 public:
  std::string_view id() const override { return "charset_aware_random"; }
  std::string guess(std::span<const Observation> observed, std::string_view,
                    Rng& rng) const override {
    std::string pool;
    for (const auto& o : observed) pool += o.password;
    if (pool.empty()) return uniform_guess(observed, rng);
    const std::size_t length = guess_length(observed, rng);
    std::string out;
    for (std::size_t i = 0; i < length; ++i) out.push_back(pool[rng.below(pool.size())]);
    return out;
  }
};

// Replays the most common observed password; with nothing observed it has
// only its uniform prior.
class FrequencyReuse final : public Adversary {
 public:
  std::string_view id() const override { return "frequency_reuse"; }
  std::string guess(std::span<const Observation> observed, std::string_view,
                    Rng& rng) const override {
    if (observed.empty()) return uniform_guess(observed, rng);
    std::map<std::string, std::size_t> counts;
    for (const auto& o : observed) ++counts[o.password];
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    return best->first;
  }
};

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

// Treats observed passwords as sentences: swaps the account name for a
// placeholder and reuses the most frequent template. Without usable
// templates it writes a sentence from common dictionary words.
class DictionarySentence final : public Adversary {
 public:
  std::string_view id() const override { return "dictionary_sentence"; }
  std::string guess(std::span<const Observation> observed, std::string_view challenge,
                    Rng& rng) const override {
    const std::string target = memory::normalize_website(challenge);
    std::map<std::vector<std::string>, std::size_t> templates;
    for (const auto& o : observed) {
      const std::string site = memory::normalize_website(o.website);
      auto words = split_words(o.password);
      bool found = false;
      for (auto& w : words) {
        if (w == site) {
          w.clear();
          found = true;
        }
      }
      if (found) ++templates[words];
    }
    if (!templates.empty()) {
      auto best = templates.begin();
      for (auto it = templates.begin(); it != templates.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      auto words = best->first;
      for (auto& w : words) {
        if (w.empty()) w = target;
      }
      return join_words(words);
    }
    const auto& corpora = memory::default_corpora();
    std::vector<std::string> words = {rng.chance(0.5) ? "my" : "the", target,
                                      rng.pick(corpora.verbs), rng.pick(corpora.adjectives),
                                      rng.pick(corpora.rare_words),
                                      rng.pick(corpora.common_words)};
    return join_words(words);
  }
};

}  // namespace

std::vector<std::string> adversary_ids() {
  return {"uniform_random", "charset_aware_random", "dictionary_sentence", "frequency_reuse"};
}

std::unique_ptr<Adversary> make_adversary(std::string_view id) {
  if (id == "uniform_random") return std::make_unique<UniformRandom>();
  if (id == "charset_aware_random") return std::make_unique<CharsetAwareRandom>();
  if (id == "dictionary_sentence" || id == "dictionary") {
    return std::make_unique<DictionarySentence>();
  }
  if (id == "frequency_reuse") return std::make_unique<FrequencyReuse>();
  throw Error(ErrorKind::Config, "unknown adversary '" + std::string(id) + "'");
}

}  // namespace mindhash::lab
