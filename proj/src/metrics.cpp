// SPDX-License-Identifier: Apache-2.0
#include "mindhash/metrics.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "mindhash/csv.hpp"
#include "mindhash/error.hpp"

namespace mindhash::metrics {

namespace {

bool is_special(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<SymbolCount> rank(const std::map<char, std::size_t>& counts) {
  std::vector<SymbolCount> out;
  for (const auto& [symbol, count] : counts) out.push_back({symbol, count});
  std::stable_sort(out.begin(), out.end(), [](const SymbolCount& a, const SymbolCount& b) {
    return a.count > b.count;
  });
  return out;
}

std::string fixed(double value, int precision = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << value;
  return out.str();
}

}  // namespace

EntropyEstimate naive_entropy(std::string_view password) {
  if (password.empty()) throw Error(ErrorKind::EmptyPassword, "password is empty");
  bool lower = false, upper = false, digit = false, special = false, space = false;
  for (char c : password) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 128 || !std::isprint(u)) {
      throw Error(ErrorKind::NonPrintable, "password contains a non-printable byte");
    }
    if (std::islower(u)) lower = true;
    else if (std::isupper(u)) upper = true;
    else if (std::isdigit(u)) digit = true;
    else if (c == ' ') space = true;
    else special = true;
  }
  const int pool = (lower ? kLowerPool : 0) + (upper ? kUpperPool : 0) +
                   (digit ? kDigitPool : 0) + (special ? kSpecialPool : 0) +
                   (space ? kSpacePool : 0);
  const int length = static_cast<int>(password.size());
  // A pool of one (only spaces) carries no information.
  return {length * std::log2(static_cast<double>(pool)), pool, length};
}

std::string_view to_string(RecallOutcome outcome) {
  switch (outcome) {
    case RecallOutcome::Complete: return "complete";
    case RecallOutcome::Partial: return "partial";
    case RecallOutcome::Failed: return "failed";
  }
  return "failed";
}

RecallScore recall_score(std::string_view initial, std::string_view remembered,
                         double threshold) {
  if (initial == remembered) return {RecallOutcome::Complete, 1.0};
  const double ratio = similarity_ratio(initial, remembered);
  return {ratio >= threshold ? RecallOutcome::Partial : RecallOutcome::Failed, ratio};
}

CapitalizationMatrix capitalization_matrix(std::span<const std::string> passwords) {
  CapitalizationMatrix matrix{};
  for (const auto& password : passwords) {
    if (password.size() > matrix.size()) continue;
    for (std::size_t i = 0; i < password.size(); ++i) {
      if (std::isupper(static_cast<unsigned char>(password[i]))) ++matrix[i];
    }
  }
  return matrix;
}

std::vector<SymbolCount> symbol_rank_frequency(std::span<const std::string> passwords) {
  std::map<char, std::size_t> counts;
  for (const auto& password : passwords) {
    for (char c : password) {
      if (is_special(c)) ++counts[c];
    }
  }
  return rank(counts);
}

std::map<std::string, std::vector<SymbolCount>> symbol_rank_by_scheme(
    std::span<const store::PasswordRecord> records) {
  std::map<std::string, std::vector<std::string>> grouped;
  for (const auto& r : records) grouped[r.scheme].push_back(r.password);
  std::map<std::string, std::vector<SymbolCount>> out;
  for (const auto& [scheme, passwords] : grouped) out[scheme] = symbol_rank_frequency(passwords);
  return out;
}

std::array<std::uint8_t, 32> sha3_256(std::string_view input) {
  std::array<std::uint8_t, 32> digest{};
  unsigned int length = 0;
  if (EVP_Digest(input.data(), input.size(), digest.data(), &length, EVP_sha3_256(), nullptr) != 1 ||
      length != digest.size()) {
    throw Error(ErrorKind::Config, "SHA3-256 unavailable");
  }
  return digest;
}

std::string sha3_256_hex(std::string_view input) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto byte : sha3_256(input)) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xf]);
  }
  return out;
}

std::vector<SymbolCount> hash_baseline_symbols(std::span<const std::string> inputs) {
  std::map<char, std::size_t> counts;
  for (const auto& input : inputs) {
    for (auto byte : sha3_256(input)) {
      const char c = static_cast<char>(byte);
      if (is_special(c)) ++counts[c];
    }
  }
  return rank(counts);
}

PolicyReport policy_check(std::string_view password) {
  PolicyReport report;
  report.length_at_least_6 = password.size() >= 6;
  report.length_at_least_8 = password.size() >= 8;
  report.length_at_least_10 = password.size() >= 10;
  for (char c : password) {
    const auto u = static_cast<unsigned char>(c);
    report.has_numeral = report.has_numeral || std::isdigit(u);
    report.has_uppercase = report.has_uppercase || std::isupper(u);
    report.has_special = report.has_special || is_special(c);
  }
  report.compliant = report.length_at_least_8 && report.has_numeral && report.has_uppercase &&
                     report.has_special;
  return report;
}

std::vector<SummaryRow> summarize(std::span<const store::PasswordRecord> records) {
  std::map<std::string, std::vector<const store::PasswordRecord*>> grouped;
  for (const auto& r : records) grouped[r.scheme].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [scheme, group] : grouped) {
    SummaryRow row;
    row.scheme = scheme;
    row.count = group.size();
    double length_sum = 0.0;
    std::size_t secure = 0;
    std::vector<double> entropies;
    double difficulty_sum = 0.0;
    std::size_t difficulty_count = 0;
    for (const auto* r : group) {
      length_sum += static_cast<double>(r->password.size());
      if (std::any_of(r->password.begin(), r->password.end(),
                      [](char c) { return is_digit(c) || is_special(c); })) {
        ++secure;
      }
      try {
        entropies.push_back(naive_entropy(r->password).bits);
      } catch (const Error&) {
        // Non-ASCII passwords stay in the length and security columns only.
      }
      if (r->difficulty) {
        difficulty_sum += *r->difficulty;
        ++difficulty_count;
      }
    }
    const double n = static_cast<double>(group.size());
    row.mean_length = length_sum / n;
    row.security_percent = 100.0 * static_cast<double>(secure) / n;
    if (!entropies.empty()) {
      // Sort so the floating-point sums do not depend on record order.
      std::sort(entropies.begin(), entropies.end());
      double sum = 0.0;
      for (double e : entropies) sum += e;
      row.mean_entropy = sum / static_cast<double>(entropies.size());
      double squares = 0.0;
      for (double e : entropies) squares += (e - row.mean_entropy) * (e - row.mean_entropy);
      row.entropy_stddev = std::sqrt(squares / static_cast<double>(entropies.size()));
    }
    if (difficulty_count > 0) {
      row.mean_difficulty = difficulty_sum / static_cast<double>(difficulty_count);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double graceful_degradation(std::span<const DegradationPoint> points) {
  std::set<int> levels;
  for (const auto& p : points) levels.insert(p.education);
  if (levels.size() < 2) {
    throw Error(ErrorKind::UndefinedMetric, "need at least two distinct education levels");
  }
  const double n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += -static_cast<double>(p.education);
    mean_y += (p.difficulty - 1.0) / 6.0;
  }
  mean_x /= n;
  mean_y /= n;
  double covariance = 0.0, variance = 0.0;
  for (const auto& p : points) {
    const double dx = -static_cast<double>(p.education) - mean_x;
    covariance += dx * ((p.difficulty - 1.0) / 6.0 - mean_y);
    variance += dx * dx;
  }
  if (variance <= 0.0) throw Error(ErrorKind::UndefinedMetric, "education has no variance");
  return covariance / variance;
}

std::vector<DegradationPoint> degradation_points(std::span<const store::PasswordRecord> records) {
  std::vector<DegradationPoint> out;
  for (const auto& r : records) {
    if (r.education && r.difficulty) out.push_back({*r.education, static_cast<double>(*r.difficulty)});
  }
  return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = csv::format_row({"scheme", "count", "mean_length", "security_percent",
                                     "mean_entropy", "entropy_stddev", "mean_difficulty"});
  for (const auto& row : rows) {
    out += csv::format_row({row.scheme, std::to_string(row.count), fixed(row.mean_length),
                            fixed(row.security_percent), fixed(row.mean_entropy),
                            fixed(row.entropy_stddev),
                            row.mean_difficulty ? fixed(*row.mean_difficulty) : "n/a"});
  }
  return out;
}

std::string symbol_rank_csv(const std::map<std::string, std::vector<SymbolCount>>& ranks) {
  std::string out = csv::format_row({"group", "rank", "symbol", "count"});
  for (const auto& [group, counts] : ranks) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out += csv::format_row({group, std::to_string(i + 1), std::string(1, counts[i].symbol),
                              std::to_string(counts[i].count)});
    }
  }
  return out;
}

std::string capitalization_csv(const CapitalizationMatrix& matrix) {
  std::string out = csv::format_row({"index", "uppercase_count"});
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += csv::format_row({std::to_string(i + 1), std::to_string(matrix[i])});
  }
  return out;
}

}  // namespace mindhash::metrics
