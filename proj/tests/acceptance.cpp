// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mindhash/error.hpp"
#include "mindhash/keyboard.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/metrics.hpp"
#include "mindhash/predictor.hpp"
#include "mindhash/rng.hpp"
#include "mindhash/schemes.hpp"
#include "mindhash/scripted_source.hpp"
#include "mindhash/security_lab.hpp"
#include "mindhash/similarity.hpp"

using namespace mindhash;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!outcome.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", seconds);
  std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << number << "] " << name << " ("
            << timing << ") " << outcome.detail << std::endl;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::set<char> as_set(const std::vector<char>& v) { return {v.begin(), v.end()}; }

}  // namespace

int main() {
  criterion(1, "group sum worked example", [] {
    const auto got = schemes::group_sum("whitebirds", 'x');
    return Outcome{got == "ecgaw", "got " + got};
  });

  criterion(2, "scrambled box coordinates for shirt", [] {
    const std::vector<memory::BlockPosition> expected = {{1, 9}, {8, 0}, {9, 0}, {1, 8}, {2, 0}};
    const auto got = schemes::box_coordinates("shirt", 1);
    std::string text;
    for (const auto& p : got) text += "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
    return Outcome{got == expected, "got " + text};
  });

  criterion(3, "song mnemonic", [] {
    const auto got = schemes::mnemonic("flipkart");
    return Outcome{got == "fpkt", "got " + got};
  });

  criterion(4, "nearest special ties", [] {
    const auto& kb = keyboard::KeyboardLayout::qwerty();
    const auto o = kb.nearest_specials('o');
    const auto e = kb.nearest_specials('e');
    const bool ok = !o.empty() && !e.empty() && as_set(o.front()) == std::set<char>{'(', ')'} &&
                    as_set(e.front()) == std::set<char>{'$', '#'};
    return Outcome{ok, "o -> " + std::string(o.front().begin(), o.front().end()) + ", e -> " +
                           std::string(e.front().begin(), e.front().end())};
  });

  criterion(5, "group sum preimage counts", [] {
    bool ok = true;
    int total = 0;
    for (char l = 'a'; l <= 'z'; ++l) {
      const int value = l - 'a' + 1;
      int brute_unordered = 0;
      int brute_ordered = 0;
      for (int x = 1; x <= 26; ++x) {
        for (int y = 1; y <= 26; ++y) {
          const std::string word = {static_cast<char>('a' + x - 1), static_cast<char>('a' + y - 1)};
          if (schemes::group_sum(word, 'a') != std::string(1, l)) continue;
          ++brute_ordered;
          if (x <= y) ++brute_unordered;
        }
      }
      const int unordered = lab::preimage_pair_count(l, lab::PairCounting::Unordered);
      const int ordered = lab::preimage_pair_count(l, lab::PairCounting::Ordered);
      ok = ok && unordered == brute_unordered && ordered == brute_ordered &&
           unordered == (value % 2 ? 13 : 14) && ordered == 26;
      total += ordered;
    }
    ok = ok && total == 676;
    return Outcome{ok, "ordered total " + std::to_string(total)};
  });

  criterion(6, "similarity example and reference agreement", [] {
    const double r = metrics::similarity_ratio("mse$i(o)*", "tsto)mhS");
    std::ifstream in(std::string(MINDHASH_TEST_DATA) + "/similarity_reference.json");
    if (!in) return Outcome{false, "reference fixture missing"};
    const auto doc = nlohmann::json::parse(in);
    double worst = 0.0;
    for (const auto& pair : doc.at("pairs")) {
      worst = std::max(worst, std::abs(metrics::similarity_ratio(pair.at("a").get<std::string>(),
                                                        pair.at("b").get<std::string>()) -
                                       pair.at("ratio").get<double>()));
    }
    const bool ok = r >= 0.28 && r <= 0.38 && doc.at("pairs").size() == 1000 && worst == 0.0;
    return Outcome{ok, "ratio " + fmt(r) + ", pairs " + std::to_string(doc.at("pairs").size()) +
                           ", max deviation " + fmt(worst)};
  });

  criterion(7, "memory palace cross-user collisions", [] {
    const auto r = lab::collision_experiment(schemes::SchemeId::MemoryPalace, 500,
                                             lab::default_websites(), 20261016, 1);
    const double rate = r.cross_user_rate.value_or(1.0);
    return Outcome{rate < 0.001, "rate " + fmt(rate) + " over " +
                                     std::to_string(r.cross_user_pairs) + " pairs, " +
                                     std::to_string(r.failures) + " failed cells"};
  });

  criterion(8, "forgery ordering for the sentence adversary", [] {
    const auto adversary = lab::make_adversary("dictionary_sentence");
    const auto is = lab::ufrca_game(schemes::SchemeId::InternalSentence, *adversary, 5, 1000,
                                    20261016, 1);
    const auto mp = lab::ufrca_game(schemes::SchemeId::MemoryPalace, *adversary, 5, 1000,
                                    20261016, 1);
    const bool ok = is.success_rate > mp.success_rate || is.mean_similarity > mp.mean_similarity;
    return Outcome{ok, "exact " + fmt(is.success_rate) + " vs " + fmt(mp.success_rate) +
                           ", similarity " + fmt(is.mean_similarity) + " vs " +
                           fmt(mp.mean_similarity)};
  });

  criterion(9, "cue recovery", [] {
    const auto perfect = lab::cue_recovery_min_images(1.0, 0.0, 0.005, 0.975);
    bool monotone = true;
    const std::vector<double> grid = {0.0, 0.1, 0.3, 0.5, 0.6, 0.75, 0.9, 0.95, 1.0};
    for (double n : grid) {
      int previous = std::numeric_limits<int>::max();
      for (double p : grid) {
        if (p - n < 0.05) continue;
        const int k = lab::cue_recovery_min_images(p, n).images;
        monotone = monotone && k <= previous;
        previous = k;
      }
    }
    for (double p : grid) {
      int previous = std::numeric_limits<int>::max();
      for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        if (p - *it < 0.05) continue;
        const int k = lab::cue_recovery_min_images(p, *it).images;
        monotone = monotone && k <= previous;
        previous = k;
      }
    }
    const bool ok = perfect == lab::CueRecovery{1, 1} && monotone;
    return Outcome{ok, "(1.0, 0.0) -> (" + std::to_string(perfect.images) + "," +
                           std::to_string(perfect.threshold) + "), grid monotone " +
                           (monotone ? "yes" : "no")};
  });

  criterion(10, "next-character predictor", [] {
    using namespace predictor;
    const LstmModel fresh(5);
    const auto sample = random_passwords(3, 4, 9, 11);
    const auto check = gradient_check(fresh, sample, 200, 1);

    const LstmModel untrained(17);
    const auto random_corpus = random_passwords(10000, 2, 8, 23);
    const double chance = last_char_accuracy(untrained, random_corpus);

    TrainConfig config;  // 100 epochs
    const auto is_corpus = synthetic_passwords(schemes::SchemeId::InternalSentence, 500, 1);
    const auto mp_corpus = synthetic_passwords(schemes::SchemeId::MemoryPalace, 500, 1);
    const double is_acc = last_char_accuracy(train(is_corpus, config).model, is_corpus);
    const double mp_acc = last_char_accuracy(train(mp_corpus, config).model, mp_corpus);

    const bool ok = check.checked == 200 && check.max_relative_error <= 1e-4 &&
                    std::abs(chance - 1.0 / 95.0) <= 0.01 && is_acc > mp_acc;
    return Outcome{ok, "gradient error " + fmt(check.max_relative_error) + ", chance " +
                           fmt(chance) + ", sentence " + fmt(is_acc) + " vs palace " +
                           fmt(mp_acc)};
  });

  criterion(11, "naive entropy", [] {
    const double bits = metrics::naive_entropy("Aa1!").bits;
    const double expected = 4.0 * std::log2(95.0);
    Rng rng(3);
    bool monotone = true;
    for (int i = 0; i < 10000; ++i) {
      std::string s(1 + rng.below(12), ' ');
      for (auto& c : s) c = static_cast<char>(0x20 + rng.below(95));
      const double before = metrics::naive_entropy(s).bits;
      s.push_back(static_cast<char>(0x20 + rng.below(95)));
      monotone = monotone && metrics::naive_entropy(s).bits >= before;
    }
    const bool ok = std::abs(bits - expected) <= 1e-9 && monotone;
    return Outcome{ok, "Aa1! -> " + fmt(bits) + " bits, append monotone " +
                           (monotone ? "yes" : "no")};
  });

  criterion(12, "determinism and trace replay", [] {
    const std::vector<std::string> sites = {"gmail", "flipkart", "amazon", "facebook", "x",
                                            "bankofamerica", "netflix", "yahoo", "github", "ebay"};
    std::size_t runs = 0;
    std::size_t mismatches = 0;
    for (auto id : schemes::kAllSchemes) {
      for (std::uint64_t c = 0; c < 50; ++c) {
        const std::uint64_t seed = 1000 + c;
        const std::string& site = sites[c % sites.size()];
        schemes::SchemeContext context;
        context.box = schemes::box_for_user(seed);
        const memory::MemoryModel first_model(seed);
        const auto first = schemes::run_scheme(id, first_model, site, context);
        if (schemes::replay(first) != first.password) ++mismatches;
        const auto reparsed = schemes::PasswordOutput::from_json(first.to_json());
        if (schemes::replay(reparsed) != first.password) ++mismatches;
        const auto first_json = first.to_json().dump();
        for (int i = 1; i < 100; ++i) {
          const memory::MemoryModel model(seed);
          if (schemes::run_scheme(id, model, site, context).to_json().dump() != first_json) {
            ++mismatches;
          }
          ++runs;
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(runs) + " repeats, " +
                                        std::to_string(mismatches) + " mismatches"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
