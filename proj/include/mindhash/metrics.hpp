// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mindhash/corpus_store.hpp"
#include "mindhash/similarity.hpp"

namespace mindhash::metrics {

// Character class sizes for the naive pool. 33 is the conventional count of
// printable specials; the class test itself accepts any ASCII punctuation.
inline constexpr int kLowerPool = 26;
inline constexpr int kUpperPool = 26;
inline constexpr int kDigitPool = 10;
inline constexpr int kSpecialPool = 33;
inline constexpr int kSpacePool = 1;

struct EntropyEstimate {
  double bits = 0.0;
  int pool_size = 0;
  int length = 0;
};

/// length * log2(pool), pool being the union of classes present.
/// Throws EmptyPassword, or NonPrintable for bytes outside printable ASCII.
EntropyEstimate naive_entropy(std::string_view password);

enum class RecallOutcome { Complete, Partial, Failed };
std::string_view to_string(RecallOutcome outcome);

struct RecallScore {
  RecallOutcome outcome = RecallOutcome::Failed;
  double ratio = 0.0;
};

inline constexpr double kPartialRecallThreshold = 0.6;

RecallScore recall_score(std::string_view initial, std::string_view remembered,
                         double threshold = kPartialRecallThreshold);

/// Uppercase counts by 1-based position 1..25 (slot i holds position i+1).
/// Passwords longer than 25 characters are skipped.
using CapitalizationMatrix = std::array<std::size_t, 25>;
CapitalizationMatrix capitalization_matrix(std::span<const std::string> passwords);

struct SymbolCount {
  char symbol = 0;
  std::size_t count = 0;

  bool operator==(const SymbolCount&) const = default;
};

/// Special characters by descending count, ties by character code.
std::vector<SymbolCount> symbol_rank_frequency(std::span<const std::string> passwords);

std::map<std::string, std::vector<SymbolCount>> symbol_rank_by_scheme(
    std::span<const store::PasswordRecord> records);

std::array<std::uint8_t, 32> sha3_256(std::string_view input);
std::string sha3_256_hex(std::string_view input);

/// Specials among the digest bytes of each input read as latin-1.
std::vector<SymbolCount> hash_baseline_symbols(std::span<const std::string> inputs);

struct PolicyReport {
  bool length_at_least_6 = false;
  bool length_at_least_8 = false;
  bool length_at_least_10 = false;
  bool has_numeral = false;
  bool has_uppercase = false;
  bool has_special = false;
  bool compliant = false;  // >= 8, numeral, uppercase and special
};

PolicyReport policy_check(std::string_view password);

struct SummaryRow {
  std::string scheme;
  std::size_t count = 0;
  double mean_length = 0.0;
  double security_percent = 0.0;  // share with >= 1 digit or symbol
  double mean_entropy = 0.0;
  double entropy_stddev = 0.0;    // population
  std::optional<double> mean_difficulty;
};

/// One row per scheme present, ordered by scheme id.
std::vector<SummaryRow> summarize(std::span<const store::PasswordRecord> records);

struct DegradationPoint {
  int education = 0;
  double difficulty = 1.0;  // 1-7 scale
};

/// Least-squares slope of difficulty (rescaled to 0-1) against education
/// in descending order. A proxy, not a published formula. Throws
/// UndefinedMetric with fewer than two education levels.
double graceful_degradation(std::span<const DegradationPoint> points);

std::vector<DegradationPoint> degradation_points(std::span<const store::PasswordRecord> records);

// CSV emitters.
std::string summary_csv(std::span<const SummaryRow> rows);
std::string symbol_rank_csv(const std::map<std::string, std::vector<SymbolCount>>& ranks);
std::string capitalization_csv(const CapitalizationMatrix& matrix);

}  // namespace mindhash::metrics
