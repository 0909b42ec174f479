// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mindhash/corpus_store.hpp"
#include "mindhash/rng.hpp"
#include "mindhash/schemes.hpp"

namespace mindhash::lab {

using schemes::SchemeId;

/// Parameters, point estimates, sample sizes and the master seed of one run.
struct ExperimentReport {
  std::string kind;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json estimates = nlohmann::json::object();
  nlohmann::json sample_sizes = nlohmann::json::object();
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  /// Flat "section,key,value" rows.
  std::string to_csv() const;
};

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// must write only its own slot, so results do not depend on `threads`.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Ten account names used when a run does not supply its own.
const std::vector<std::string>& default_websites();

/// Larger pool the forgery game draws observed and challenge accounts from.
const std::vector<std::string>& website_pool();

/// Seed of simulated user `index` under a master seed.
std::uint64_t user_seed(std::uint64_t master_seed, std::uint64_t index);

/// Password a freshly simulated user with this seed produces.
std::string simulated_password(SchemeId scheme, std::uint64_t user_seed,
                               std::string_view website);

// ------------------------------------------------------------- preimages

enum class PairCounting { Ordered, Unordered };

/// Pairs (x, y) in 1..26 whose group sum is `letter`.
int preimage_pair_count(char letter, PairCounting counting);

// ------------------------------------------------------------ collisions

struct CollisionReport {
  std::optional<double> cross_user_rate;  // n/a for a single user
  double same_user_rate = 0.0;
  std::size_t cross_user_pairs = 0;
  std::size_t cross_user_collisions = 0;
  std::size_t same_user_pairs = 0;
  std::size_t same_user_collisions = 0;
  std::size_t failures = 0;  // (user, website) cells the scheme could not produce
  ExperimentReport report;
};

CollisionReport collision_experiment(SchemeId scheme, std::size_t n_users,
                                     std::span<const std::string> websites,
                                     std::uint64_t seed, unsigned threads = 1);

/// Same experiment over explicit user seeds.
CollisionReport collision_experiment(SchemeId scheme, std::span<const std::uint64_t> user_seeds,
                                     std::span<const std::string> websites,
                                     unsigned threads = 1);

// ------------------------------------------------------------- avalanche

struct WebsitePair {
  std::string first;
  std::string second;
};

const std::vector<WebsitePair>& default_avalanche_pairs();

struct AvalancheReport {
  double mean_changed_fraction = 0.0;
  double mean_similarity = 0.0;
  std::size_t samples = 0;
  double baseline_changed_fraction = 0.0;  // SHA3-256 hex digests of the same pairs
  ExperimentReport report;
};

/// Throws InvalidPair unless every pair is at edit distance one.
AvalancheReport avalanche_experiment(SchemeId scheme, std::span<const WebsitePair> pairs,
                                     std::size_t n_users, std::uint64_t seed);

/// Positions (up to the shorter length) holding the same character.
std::size_t identical_positions(std::string_view a, std::string_view b);

// ---------------------------------------------------------------- UF-RCA

struct Observation {
  std::string website;
  std::string password;
};

/// Forgery strategy: sees k (website, password) pairs of one user and names
/// a password for a website it has not seen.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string_view id() const = 0;
  virtual std::string guess(std::span<const Observation> observed,
                            std::string_view challenge_website, Rng& rng) const = 0;
};

/// uniform_random, charset_aware_random, dictionary_sentence (alias
/// "dictionary") or frequency_reuse. Throws ConfigError otherwise.
std::unique_ptr<Adversary> make_adversary(std::string_view id);
std::vector<std::string> adversary_ids();

struct UfRcaResult {
  std::string adversary;
  SchemeId scheme = SchemeId::MemoryPalace;
  std::size_t k_observed = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_similarity = 0.0;  // reported only, never a pass criterion
  ExperimentReport report;
};

UfRcaResult ufrca_game(SchemeId scheme, const Adversary& adversary, std::size_t k_observed,
                       std::size_t trials, std::uint64_t seed, unsigned threads = 1);

// ----------------------------------------------------------- cue recovery

/// P[Bin(k, q) >= t], summed in log space.
double binomial_upper_tail(int k, double q, int t);

struct CueRecovery {
  int images = 0;
  int threshold = 0;

  bool operator==(const CueRecovery&) const = default;
};

/// Fewest labelled images k, with threshold t, such that an unprimed guesser
/// passes with probability <= max_fpr and a primed one with >= min_tpr.
/// Throws InvalidPriming unless 0 <= n < p <= 1.
CueRecovery cue_recovery_min_images(double primed, double unprimed, double max_fpr = 0.005,
                                    double min_tpr = 0.975, int max_images = 100000);

// ------------------------------------------------------------ one-wayness

struct OneWayness {
  double mean_bits = 0.0;
  double log2_epsilon = 0.0;  // -mean_bits
};

/// Nominal guessing bound from the mean naive entropy. Throws EmptyCorpus.
OneWayness one_wayness_bound(std::span<const store::PasswordRecord> records);
OneWayness one_wayness_bound(std::span<const std::string> passwords);

}  // namespace mindhash::lab
