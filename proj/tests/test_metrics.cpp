// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mindhash/error.hpp"
#include "mindhash/metrics.hpp"
#include "mindhash/rng.hpp"
#include "mindhash/similarity.hpp"
#include "oracles.hpp"

using namespace mindhash;
using namespace mindhash::metrics;

namespace {

std::string random_string(Rng& rng, std::string_view alphabet, std::size_t max_length) {
  std::string s;
  const auto n = rng.below(max_length + 1);
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}

store::PasswordRecord record(std::string scheme, std::string password,
                             std::optional<int> difficulty = {}, std::optional<int> education = {}) {
  store::PasswordRecord r;
  r.id = scheme + password;
  r.scheme = std::move(scheme);
  r.password = std::move(password);
  r.difficulty = difficulty;
  r.education = education;
  return r;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("similarity worked example") {
    const double r = similarity_ratio("mse$i(o)*", "tsto)mhS");
    CHECK(r >= 0.28);
    CHECK(r <= 0.38);
    CHECK(r == doctest::Approx(6.0 / 17.0).epsilon(1e-15));
    CHECK(similarity_ratio("tsto)mhS", "mse$i(o)*") == doctest::Approx(r));
  }

  TEST_CASE("similarity edge cases") {
    CHECK(similarity_ratio("", "") == 1.0);
    CHECK(similarity_ratio("abc", "") == 0.0);
    CHECK(similarity_ratio("abc", "abc") == 1.0);
    CHECK(similarity_ratio("abc", "xyz") == 0.0);
  }

  TEST_CASE("similarity agrees with the brute-force recursion") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
      const auto alphabet = i % 2 ? std::string_view("ab") : std::string_view("abcdefg");
      const auto a = random_string(rng, alphabet, 14);
      const auto b = random_string(rng, alphabet, 14);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(similarity_ratio(a, b) == oracle::ro_ratio(a, b));
    }
  }

  TEST_CASE("similarity agrees with the difflib fixture") {
    std::ifstream in(std::string(MINDHASH_TEST_DATA) + "/similarity_reference.json");
    REQUIRE(in.good());
    const auto doc = nlohmann::json::parse(in);
    double worst = 0.0;
    for (const auto& pair : doc.at("pairs")) {
      const auto a = pair.at("a").get<std::string>();
      const auto b = pair.at("b").get<std::string>();
      worst = std::max(worst, std::abs(similarity_ratio(a, b) - pair.at("ratio").get<double>()));
    }
    CHECK(doc.at("pairs").size() == 1000);
    CHECK(worst == 0.0);
  }

  TEST_CASE("levenshtein") {
    CHECK(levenshtein("store", "stove") == 1);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
  }

  TEST_CASE("entropy formula") {
    CHECK(std::abs(naive_entropy("Aa1!").bits - 4.0 * std::log2(95.0)) <= 1e-9);
    CHECK(naive_entropy("Aa1!").pool_size == 95);
    CHECK(naive_entropy("a").bits == doctest::Approx(4.70).epsilon(1e-3));
    CHECK(naive_entropy("a b").pool_size == 27);
    CHECK_THROWS_AS(naive_entropy(""), Error);
    CHECK_THROWS_AS(naive_entropy("caf\xc3\xa9"), Error);
    CHECK_THROWS_AS(naive_entropy("a\tb"), Error);
  }

  TEST_CASE("entropy never drops when a character is appended") {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
      std::string s = random_string(rng, "abcXYZ019!@# ", 12);
      if (s.empty()) s = "a";
      const double before = naive_entropy(s).bits;
      s.push_back(static_cast<char>(0x20 + rng.below(95)));
      CHECK(naive_entropy(s).bits >= before);
    }
  }

  TEST_CASE("recall scoring") {
    CHECK(recall_score("secret", "secret").outcome == RecallOutcome::Complete);
    const auto partial = recall_score("abc", "abd");
    CHECK(partial.outcome == RecallOutcome::Partial);
    CHECK(partial.ratio == doctest::Approx(0.667).epsilon(1e-3));
    CHECK(recall_score("abc", "").outcome == RecallOutcome::Failed);
    CHECK(recall_score("abcdef", "abcxyz").outcome == RecallOutcome::Failed);  // exactly 0.5
  }

  TEST_CASE("capitalisation matrix") {
    const std::vector<std::string> pws = {"Hello", "aBc", "ABCDEFGHIJKLMNOPQRSTUVWXYZ"};
    const auto m = capitalization_matrix(pws);
    CHECK(m[0] == 1);
    CHECK(m[1] == 1);
    CHECK(m[2] == 0);
  }

  TEST_CASE("symbol ranking") {
    const std::vector<std::string> pws = {"a!b#", "$!", "#"};
    const auto ranks = symbol_rank_frequency(pws);
    REQUIRE(ranks.size() == 3);
    CHECK(ranks[0] == SymbolCount{'!', 2});
    CHECK(ranks[1] == SymbolCount{'#', 2});
    CHECK(ranks[2] == SymbolCount{'$', 1});
  }

  TEST_CASE("hash baseline") {
    CHECK(sha3_256_hex("aaa") == "80fb34a2c6bc537d2d044c013042b3b36239aaf3cfd381d62a9ab8e8753876d0");
    CHECK(sha3_256_hex("") == "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
  }

  TEST_CASE("policy check") {
    const auto weak = policy_check("password");
    CHECK(weak.length_at_least_8);
    CHECK_FALSE(weak.compliant);
    const auto strong = policy_check("Pa55word!");
    CHECK(strong.compliant);
    CHECK_FALSE(strong.length_at_least_10);
  }

  TEST_CASE("summary table") {
    const std::vector<store::PasswordRecord> records = {
        record("song", "ab"), record("song", "a1"), record("memory-palace", "xY", 4)};
    const auto rows = summarize(records);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scheme == "memory-palace");
    CHECK(rows[0].mean_difficulty == 4.0);
    CHECK(rows[1].scheme == "song");
    CHECK_FALSE(rows[1].mean_difficulty.has_value());
    CHECK(rows[1].security_percent == doctest::Approx(50.0));
    const double e1 = 2 * std::log2(26.0), e2 = 2 * std::log2(36.0);
    CHECK(rows[1].mean_entropy == doctest::Approx((e1 + e2) / 2));
    CHECK(rows[1].entropy_stddev == doctest::Approx(std::abs(e2 - e1) / 2));
    CHECK(summary_csv(rows).find("n/a") != std::string::npos);

    auto reversed = records;
    std::reverse(reversed.begin(), reversed.end());
    const auto again = summarize(reversed);
    CHECK(again[1].mean_entropy == rows[1].mean_entropy);
  }

  TEST_CASE("graceful degradation proxy") {
    const std::vector<DegradationPoint> one_level = {{2, 3.0}, {2, 5.0}};
    CHECK_THROWS_AS(graceful_degradation(one_level), Error);
    const std::vector<DegradationPoint> points = {{1, 7.0}, {3, 1.0}};
    CHECK(graceful_degradation(points) == doctest::Approx(0.5));
  }
}
