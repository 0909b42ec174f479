// SPDX-License-Identifier: Apache-2.0
#include "mindhash/security_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "mindhash/csv.hpp"
#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/metrics.hpp"
#include "mindhash/similarity.hpp"

namespace mindhash::lab {

using nlohmann::json;

namespace {

std::string scalar_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "n/a";
  return value.dump();
}

void flatten(const std::string& section, const std::string& prefix, const json& value,
             std::string& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      flatten(section, prefix.empty() ? key : prefix + "." + key, child, out);
    }
    return;
  }
  out += csv::format_row({section, prefix, scalar_text(value)});
}

}  // namespace

json ExperimentReport::to_json() const {
  return {{"kind", kind},
          {"seed", seed},
          {"parameters", parameters},
          {"estimates", estimates},
          {"sample_sizes", sample_sizes}};
}

std::string ExperimentReport::to_csv() const {
  std::string out = csv::format_row({"section", "key", "value"});
  out += csv::format_row({"run", "kind", kind});
  out += csv::format_row({"run", "seed", std::to_string(seed)});
  flatten("parameters", "", parameters, out);
  flatten("estimates", "", estimates, out);
  flatten("sample_sizes", "", sample_sizes, out);
  return out;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

const std::vector<std::string>& default_websites() {
  static const std::vector<std::string> sites = {
      "gmail", "amazon", "facebook", "flipkart", "netflix",
      "twitter", "github", "reddit", "yahoo", "linkedin"};
  return sites;
}

const std::vector<std::string>& website_pool() {
  static const std::vector<std::string> sites = {
      "gmail",     "amazon",   "facebook", "flipkart",  "netflix",   "twitter",  "github",
      "reddit",    "yahoo",    "linkedin", "instagram", "paypal",    "ebay",     "spotify",
      "dropbox",   "slack",    "zoom",     "outlook",   "pinterest", "tumblr",   "wikipedia",
      "quora",     "medium",   "discord",  "twitch",    "steam",     "airbnb",   "uber",
      "booking",   "expedia",  "walmart",  "target",    "etsy",      "coursera", "udemy",
      "duolingo",  "whatsapp", "telegram", "skype",     "hulu"};
  return sites;
}

std::uint64_t user_seed(std::uint64_t master_seed, std::uint64_t index) {
  return derive_seed(master_seed, "user", index);
}

std::string simulated_password(SchemeId scheme, std::uint64_t seed, std::string_view website) {
  const memory::MemoryModel model(seed);
  schemes::SchemeContext context;
  if (scheme == SchemeId::ScrambledBox) context.box = schemes::box_for_user(seed);
  return schemes::run_scheme(scheme, model, website, context).password;
}

// ------------------------------------------------------------- preimages

int preimage_pair_count(char letter, PairCounting counting) {
  if (letter < 'a' || letter > 'z') {
    throw Error(ErrorKind::Config, "preimage letter must be in a-z");
  }
  const int target = letter - 'a' + 1;
  int count = 0;
  for (int x = 1; x <= 26; ++x) {
    for (int y = counting == PairCounting::Ordered ? 1 : x; y <= 26; ++y) {
      int sum = x + y;
      if (sum > 26) sum -= 26;
      if (sum == target) ++count;
    }
  }
  return count;
}

// ------------------------------------------------------------ collisions

CollisionReport collision_experiment(SchemeId scheme, std::size_t n_users,
                                     std::span<const std::string> websites, std::uint64_t seed,
                                     unsigned threads) {
  std::vector<std::uint64_t> seeds(n_users);
  for (std::size_t i = 0; i < n_users; ++i) seeds[i] = user_seed(seed, i);
  auto result = collision_experiment(scheme, seeds, websites, threads);
  result.report.seed = seed;
  result.report.parameters["n_users"] = n_users;
  return result;
}

CollisionReport collision_experiment(SchemeId scheme, std::span<const std::uint64_t> user_seeds,
                                     std::span<const std::string> websites, unsigned threads) {
  const std::size_t users = user_seeds.size();
  const std::size_t sites = websites.size();
  // Empty string marks a cell the scheme could not produce.
  std::vector<std::vector<std::string>> passwords(users, std::vector<std::string>(sites));
  parallel_for(users, threads, [&](std::size_t u) {
    const memory::MemoryModel model(user_seeds[u]);
    schemes::SchemeContext context;
    if (scheme == SchemeId::ScrambledBox) context.box = schemes::box_for_user(user_seeds[u]);
    for (std::size_t s = 0; s < sites; ++s) {
      try {
        passwords[u][s] = schemes::run_scheme(scheme, model, websites[s], context).password;
      } catch (const Error&) {
        passwords[u][s].clear();
      }
    }
  });

  CollisionReport out;
  for (std::size_t s = 0; s < sites; ++s) {
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t produced = 0;
    for (std::size_t u = 0; u < users; ++u) {
      const auto& pw = passwords[u][s];
      if (pw.empty()) {
        ++out.failures;
        continue;
      }
      out.cross_user_collisions += seen[pw]++;
      ++produced;
    }
    out.cross_user_pairs += produced * (produced - (produced > 0 ? 1 : 0)) / 2;
  }
  for (std::size_t u = 0; u < users; ++u) {
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t produced = 0;
    for (std::size_t s = 0; s < sites; ++s) {
      const auto& pw = passwords[u][s];
      if (pw.empty()) continue;
      out.same_user_collisions += seen[pw]++;
      ++produced;
    }
    out.same_user_pairs += produced * (produced - (produced > 0 ? 1 : 0)) / 2;
  }
  if (users >= 2 && out.cross_user_pairs > 0) {
    out.cross_user_rate =
        static_cast<double>(out.cross_user_collisions) / static_cast<double>(out.cross_user_pairs);
  }
  if (out.same_user_pairs > 0) {
    out.same_user_rate =
        static_cast<double>(out.same_user_collisions) / static_cast<double>(out.same_user_pairs);
  }

  auto& r = out.report;
  r.kind = "collision";
  r.parameters = {{"scheme", schemes::to_string(scheme)},
                  {"websites", std::vector<std::string>(websites.begin(), websites.end())},
                  {"n_users", users}};
  r.estimates = {{"cross_user_rate", out.cross_user_rate ? json(*out.cross_user_rate) : json()},
                 {"same_user_rate", out.same_user_rate}};
  r.sample_sizes = {{"cross_user_pairs", out.cross_user_pairs},
                    {"cross_user_collisions", out.cross_user_collisions},
                    {"same_user_pairs", out.same_user_pairs},
                    {"same_user_collisions", out.same_user_collisions},
                    {"failures", out.failures}};
  return out;
}

// ------------------------------------------------------------- avalanche

const std::vector<WebsitePair>& default_avalanche_pairs() {
  static const std::vector<WebsitePair> pairs = {
      {"store", "stove"},   {"gmail", "gmaik"},     {"amazon", "amazin"},
      {"yahoo", "yahop"},   {"reddit", "redlit"},   {"github", "gitnub"},
      {"netflix", "netfix"}, {"twitter", "twister"}, {"paypal", "paypol"},
      {"ebay", "bay"}};
  return pairs;
}

std::size_t identical_positions(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t same = 0;
  for (std::size_t i = 0; i < n; ++i) same += a[i] == b[i] ? 1 : 0;
  return same;
}

namespace {

double changed_fraction(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return 1.0;
  return static_cast<double>(n - identical_positions(a, b)) / static_cast<double>(n);
}

}  // namespace

AvalancheReport avalanche_experiment(SchemeId scheme, std::span<const WebsitePair> pairs,
                                     std::size_t n_users, std::uint64_t seed) {
  for (const auto& pair : pairs) {
    if (metrics::levenshtein(pair.first, pair.second) != 1) {
      throw Error(ErrorKind::InvalidPair,
                  "'" + pair.first + "' and '" + pair.second + "' are not one edit apart");
    }
  }
  AvalancheReport out;
  double changed = 0.0, similarity = 0.0, baseline = 0.0;
  json examples = json::array();
  for (const auto& pair : pairs) {
    baseline += changed_fraction(metrics::sha3_256_hex(pair.first),
                                 metrics::sha3_256_hex(pair.second));
  }
  for (std::size_t u = 0; u < n_users; ++u) {
    const auto useed = user_seed(seed, u);
    for (const auto& pair : pairs) {
      std::string a, b;
      try {
        a = simulated_password(scheme, useed, pair.first);
        b = simulated_password(scheme, useed, pair.second);
      } catch (const Error&) {
        continue;
      }
      changed += changed_fraction(a, b);
      similarity += metrics::similarity_ratio(a, b);
      ++out.samples;
      if (u == 0) examples.push_back({{"first", pair.first}, {"second", pair.second},
                                      {"hash_first", a}, {"hash_second", b}});
    }
  }
  if (out.samples > 0) {
    out.mean_changed_fraction = changed / static_cast<double>(out.samples);
    out.mean_similarity = similarity / static_cast<double>(out.samples);
  }
  if (!pairs.empty()) out.baseline_changed_fraction = baseline / static_cast<double>(pairs.size());

  json pair_list = json::array();
  for (const auto& pair : pairs) pair_list.push_back({pair.first, pair.second});
  auto& r = out.report;
  r.kind = "avalanche";
  r.seed = seed;
  r.parameters = {{"scheme", schemes::to_string(scheme)}, {"n_users", n_users},
                  {"pairs", pair_list}};
  r.estimates = {{"mean_changed_fraction", out.mean_changed_fraction},
                 {"mean_similarity", out.mean_similarity},
                 {"sha3_256_hex_changed_fraction", out.baseline_changed_fraction},
                 {"first_user_examples", examples}};
  r.sample_sizes = {{"samples", out.samples}};
  return out;
}

// ---------------------------------------------------------------- UF-RCA

UfRcaResult ufrca_game(SchemeId scheme, const Adversary& adversary, std::size_t k_observed,
                       std::size_t trials, std::uint64_t seed, unsigned threads) {
  const auto& pool = website_pool();
  if (k_observed + 1 > pool.size()) {
    throw Error(ErrorKind::Config, "k_observed exceeds the website pool");
  }
  struct Trial {
    bool success = false;
    double similarity = 0.0;
    bool valid = false;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto useed = derive_seed(seed, "ufrca-user", t);
    Rng pick(derive_seed(seed, "ufrca-websites", t));
    std::vector<std::string> sites = pool;
    pick.shuffle(sites);
    const memory::MemoryModel model(useed);
    schemes::SchemeContext context;
    if (scheme == SchemeId::ScrambledBox) context.box = schemes::box_for_user(useed);
    try {
      std::vector<Observation> observed;
      for (std::size_t i = 0; i < k_observed; ++i) {
        observed.push_back({sites[i], schemes::run_scheme(scheme, model, sites[i], context).password});
      }
      const std::string& challenge = sites[k_observed];
      const std::string truth = schemes::run_scheme(scheme, model, challenge, context).password;
      Rng rng(derive_seed(seed, "ufrca-adversary", t));
      const std::string forged = adversary.guess(observed, challenge, rng);
      results[t] = {forged == truth, metrics::similarity_ratio(forged, truth), true};
    } catch (const Error&) {
      results[t].valid = false;
    }
  });

  UfRcaResult out;
  out.adversary = std::string(adversary.id());
  out.scheme = scheme;
  out.k_observed = k_observed;
  double similarity = 0.0;
  for (const auto& r : results) {
    if (!r.valid) continue;
    ++out.trials;
    out.successes += r.success ? 1 : 0;
    similarity += r.similarity;
  }
  if (out.trials > 0) {
    out.success_rate = static_cast<double>(out.successes) / static_cast<double>(out.trials);
    out.mean_similarity = similarity / static_cast<double>(out.trials);
  }
  auto& r = out.report;
  r.kind = "ufrca";
  r.seed = seed;
  r.parameters = {{"scheme", schemes::to_string(scheme)}, {"adversary", out.adversary},
                  {"k_observed", k_observed}, {"trials_requested", trials}};
  r.estimates = {{"success_rate", out.success_rate}, {"mean_similarity", out.mean_similarity}};
  r.sample_sizes = {{"trials", out.trials}, {"successes", out.successes},
                    {"skipped", trials - out.trials}};
  return out;
}

// ----------------------------------------------------------- cue recovery

namespace {

// Upper tails P[Bin(k, q) >= t] for t = 0..k+1.
std::vector<double> upper_tails(int k, double q) {
  std::vector<double> tails(static_cast<std::size_t>(k) + 2, 0.0);
  if (q <= 0.0) {
    tails[0] = 1.0;
    return tails;
  }
  if (q >= 1.0) {
    for (int t = 0; t <= k; ++t) tails[static_cast<std::size_t>(t)] = 1.0;
    return tails;
  }
  const double lq = std::log(q), lnq = std::log1p(-q);
  const double lk = std::lgamma(k + 1.0);
  long double running = 0.0L;
  for (int i = k; i >= 0; --i) {
    const double log_term = lk - std::lgamma(i + 1.0) - std::lgamma(k - i + 1.0) + i * lq +
                            (k - i) * lnq;
    running += std::exp(static_cast<long double>(log_term));
    tails[static_cast<std::size_t>(i)] = static_cast<double>(std::min(running, 1.0L));
  }
  return tails;
}

}  // namespace

double binomial_upper_tail(int k, double q, int t) {
  if (k < 0 || q < 0.0 || q > 1.0) throw Error(ErrorKind::Config, "invalid binomial parameters");
  if (t <= 0) return 1.0;
  if (t > k) return 0.0;
  return upper_tails(k, q)[static_cast<std::size_t>(t)];
}

CueRecovery cue_recovery_min_images(double primed, double unprimed, double max_fpr,
                                    double min_tpr, int max_images) {
  if (!(unprimed >= 0.0 && unprimed < primed && primed <= 1.0)) {
    throw Error(ErrorKind::InvalidPriming, "need 0 <= unprimed < primed <= 1");
  }
  if (!(max_fpr > 0.0 && max_fpr < min_tpr && min_tpr < 1.0)) {
    throw Error(ErrorKind::Config, "need 0 < max_fpr < min_tpr < 1");
  }
  for (int k = 1; k <= max_images; ++k) {
    const auto fpr = upper_tails(k, unprimed);
    int t = 0;
    while (t <= k && fpr[static_cast<std::size_t>(t)] > max_fpr) ++t;
    if (t > k) continue;  // even a perfect score is too likely by chance
    if (upper_tails(k, primed)[static_cast<std::size_t>(t)] >= min_tpr) return {k, t};
  }
  throw Error(ErrorKind::Config, "no image count up to the search limit separates the rates");
}

// ------------------------------------------------------------ one-wayness

OneWayness one_wayness_bound(std::span<const std::string> passwords) {
  if (passwords.empty()) throw Error(ErrorKind::EmptyCorpus, "no passwords");
  double sum = 0.0;
  for (const auto& pw : passwords) sum += metrics::naive_entropy(pw).bits;
  const double mean = sum / static_cast<double>(passwords.size());
  return {mean, -mean};
}

OneWayness one_wayness_bound(std::span<const store::PasswordRecord> records) {
  std::vector<std::string> passwords;
  for (const auto& r : records) passwords.push_back(r.password);
  return one_wayness_bound(std::span<const std::string>(passwords));
}

}  // namespace mindhash::lab
