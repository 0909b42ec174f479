// SPDX-License-Identifier: Apache-2.0
// mindhash: command-line front end for generation, simulation, analysis,
// attack experiments, predictor training and the local session service.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mindhash/corpus_store.hpp"
#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/metrics.hpp"
#include "mindhash/predictor.hpp"
#include "mindhash/schemes.hpp"
#include "mindhash/scripted_source.hpp"
#include "mindhash/security_lab.hpp"
#include "mindhash/service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mindhash;

namespace {

constexpr int kUsageExit = 2;
constexpr int kRuntimeExit = 1;

// Reads {"option": value} or {"subcommand": {"option": value}} documents.
class JsonConfig final : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json doc = json::object();
    for (const auto* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        doc[name] = opt->as<std::string>();
      } else if (default_also && !opt->get_default_str().empty()) {
        doc[name] = opt->get_default_str();
      }
    }
    return doc.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& value) {
    return value.is_string() ? value.get<std::string>() : value.dump();
  }

  static void collect(const json& doc, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else if (value.is_boolean()) {
        item.inputs.push_back(value.get<bool>() ? "true" : "false");
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  out << content;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void log_seed(std::uint64_t seed) { std::cerr << "master seed: " << seed << '\n'; }

std::vector<store::PasswordRecord> load_or_fail(const fs::path& path) {
  auto loaded = store::load_records(path);
  for (const auto& e : loaded.errors) {
    std::cerr << path.string() << ':' << e.line << ": " << e.message << '\n';
  }
  return std::move(loaded.records);
}

// ------------------------------------------------------------- generate

struct GenerateArgs {
  std::string scheme;
  std::string website;
  std::uint64_t seed = 0;
  bool trace = false;
  std::string model;
  std::string answers;
};

int run_generate(const GenerateArgs& a) {
  const auto scheme = schemes::scheme_from_string(a.scheme);
  if (!a.model.empty() && !a.answers.empty()) {
    throw Error(ErrorKind::Config, "--model and --answers are mutually exclusive");
  }
  schemes::PasswordOutput out;
  if (!a.answers.empty()) {
    const memory::ScriptedSource source(read_json_file(a.answers));
    schemes::SchemeContext context;
    context.box = schemes::box_for_user(a.seed);
    out = schemes::run_scheme(scheme, source, a.website, context);
  } else {
    const memory::MemoryModel model =
        a.model.empty() ? memory::MemoryModel(a.seed)
                        : memory::MemoryModel::from_json(read_json_file(a.model).dump());
    schemes::SchemeContext context;
    context.box = schemes::box_for_user(model.seed());
    out = schemes::run_scheme(scheme, model, a.website, context);
  }
  if (a.trace) {
    std::cout << out.to_json().dump(2) << '\n';
  } else {
    std::cout << out.password << '\n';
  }
  return 0;
}

int run_replay(const std::string& input) {
  const auto output = schemes::PasswordOutput::from_json(read_json_file(input));
  const auto password = schemes::replay(output);
  std::cout << password << '\n';
  if (password != output.password) {
    std::cerr << "replay differs from the recorded password\n";
    return kRuntimeExit;
  }
  return 0;
}

// ------------------------------------------------------------- simulate

struct SimulateArgs {
  std::vector<std::string> schemes{"all"};
  std::size_t users = 10;
  std::vector<std::string> websites;
  std::uint64_t seed = 0;
  std::string out = "results/records.jsonl";
};

std::vector<schemes::SchemeId> parse_schemes(const std::vector<std::string>& names) {
  std::vector<schemes::SchemeId> ids;
  for (const auto& n : names) {
    if (n == "all") {
      ids.assign(schemes::kAllSchemes.begin(), schemes::kAllSchemes.end());
      return ids;
    }
    ids.push_back(schemes::scheme_from_string(n));
  }
  return ids;
}

int run_simulate(const SimulateArgs& a) {
  const auto ids = parse_schemes(a.schemes);
  const auto websites = a.websites.empty() ? lab::default_websites() : a.websites;
  log_seed(a.seed);
  std::vector<store::PasswordRecord> records;
  std::size_t skipped = 0;
  for (auto id : ids) {
    for (std::size_t u = 0; u < a.users; ++u) {
      const auto useed = lab::user_seed(a.seed, u);
      for (const auto& site : websites) {
        store::PasswordRecord r;
        try {
          r.password = lab::simulated_password(id, useed, site);
        } catch (const Error&) {
          ++skipped;
          continue;
        }
        r.id = "sim-" + std::string(schemes::to_string(id)) + "-" + std::to_string(u) + "-" + site;
        r.scheme = std::string(schemes::to_string(id));
        r.website = site;
        r.source = {store::RecordSource::Kind::Simulated, useed, {}};
        r.created_at = store::now_iso8601();
        records.push_back(std::move(r));
      }
    }
  }
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  store::save_records(a.out, records);
  std::cout << json{{"records", records.size()}, {"skipped", skipped}, {"out", a.out},
                    {"seed", a.seed}}.dump() << '\n';
  return 0;
}

// -------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string csv_input;
  std::string out = "results/analysis";
  bool summary = false;
  bool symbols = false;
  bool capitalization = false;
  bool policy = false;
  bool degradation = false;
};

int run_analyze(AnalyzeArgs a) {
  if (a.input.empty() == a.csv_input.empty()) {
    throw Error(ErrorKind::Config, "give exactly one of --input or --csv");
  }
  if (!(a.summary || a.symbols || a.capitalization || a.policy || a.degradation)) {
    a.summary = a.symbols = a.capitalization = a.policy = a.degradation = true;
  }
  std::vector<store::PasswordRecord> records;
  if (!a.input.empty()) {
    records = load_or_fail(a.input);
  } else {
    auto imported = store::import_survey_csv_file(a.csv_input, {});
    for (const auto& e : imported.rejected) std::cerr << "row " << e.row << ": " << e.message << '\n';
    records = std::move(imported.records);
  }
  const fs::path dir(a.out);
  fs::create_directories(dir);
  json written = json::array();
  if (a.summary) {
    const auto rows = metrics::summarize(records);
    const auto text = metrics::summary_csv(rows);
    write_file(dir / "summary.csv", text);
    written.push_back("summary.csv");
    std::cout << text;
  }
  if (a.symbols) {
    auto ranks = metrics::symbol_rank_by_scheme(records);
    std::vector<std::string> inputs;
    for (const auto& r : records) inputs.push_back(r.website);
    ranks["sha3-256 baseline"] = metrics::hash_baseline_symbols(inputs);
    write_file(dir / "symbols.csv", metrics::symbol_rank_csv(ranks));
    written.push_back("symbols.csv");
  }
  if (a.capitalization) {
    std::vector<std::string> passwords;
    for (const auto& r : records) passwords.push_back(r.password);
    write_file(dir / "capitalization.csv",
               metrics::capitalization_csv(metrics::capitalization_matrix(passwords)));
    written.push_back("capitalization.csv");
  }
  if (a.policy) {
    std::string text = "id,scheme,length_6,length_8,length_10,numeral,uppercase,special,compliant\n";
    for (const auto& r : records) {
      const auto p = metrics::policy_check(r.password);
      std::ostringstream line;
      line << r.id << ',' << r.scheme << ',' << p.length_at_least_6 << ',' << p.length_at_least_8
           << ',' << p.length_at_least_10 << ',' << p.has_numeral << ',' << p.has_uppercase << ','
           << p.has_special << ',' << p.compliant << '\n';
      text += line.str();
    }
    write_file(dir / "policy.csv", text);
    written.push_back("policy.csv");
  }
  if (a.degradation) {
    json doc = json::object();
    std::map<std::string, std::vector<store::PasswordRecord>> grouped;
    for (const auto& r : records) grouped[r.scheme].push_back(r);
    for (const auto& [scheme, group] : grouped) {
      const auto points = metrics::degradation_points(group);
      try {
        doc[scheme] = metrics::graceful_degradation(points);
      } catch (const Error&) {
        doc[scheme] = nullptr;  // not enough education levels
      }
    }
    write_file(dir / "degradation.json", doc.dump(2) + "\n");
    written.push_back("degradation.json");
  }
  std::cerr << json{{"out", a.out}, {"files", written}}.dump() << '\n';
  return 0;
}

// --------------------------------------------------------------- attack

struct AttackArgs {
  std::string game;
  std::string scheme = "memory-palace";
  std::string adversary = "dictionary_sentence";
  std::size_t k = 5;
  std::size_t trials = 1000;
  std::size_t users = 500;
  std::vector<std::string> websites;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double primed = -1.0;
  double unprimed = -1.0;
  double max_fpr = 0.005;
  double min_tpr = 0.975;
  std::string out = "results/attack";
};

int run_attack(const AttackArgs& a) {
  static const std::set<std::string> kGames = {"ufrca", "collision", "avalanche", "preimage", "cue"};
  if (!kGames.count(a.game)) throw Error(ErrorKind::Config, "unknown game '" + a.game + "'");
  const bool needs_scheme = a.game == "ufrca" || a.game == "collision" || a.game == "avalanche";
  const auto scheme = needs_scheme ? schemes::scheme_from_string(a.scheme)
                                   : schemes::SchemeId::MemoryPalace;
  std::unique_ptr<lab::Adversary> adversary;
  if (a.game == "ufrca") adversary = lab::make_adversary(a.adversary);
  if (a.game == "cue" && (a.primed < 0.0 || a.unprimed < 0.0)) {
    throw Error(ErrorKind::Config, "cue needs --primed and --unprimed");
  }
  if (a.threads < 1) throw Error(ErrorKind::Config, "--threads must be at least 1");

  lab::ExperimentReport report;
  if (a.game == "ufrca") {
    log_seed(a.seed);
    report = lab::ufrca_game(scheme, *adversary, a.k, a.trials, a.seed, a.threads).report;
  } else if (a.game == "collision") {
    log_seed(a.seed);
    const auto websites = a.websites.empty() ? lab::default_websites() : a.websites;
    report = lab::collision_experiment(scheme, a.users, websites, a.seed, a.threads).report;
  } else if (a.game == "avalanche") {
    log_seed(a.seed);
    report = lab::avalanche_experiment(scheme, lab::default_avalanche_pairs(), a.users, a.seed).report;
  } else if (a.game == "preimage") {
    report.kind = "preimage";
    std::size_t total = 0;
    for (char l = 'a'; l <= 'z'; ++l) {
      const auto ordered = lab::preimage_pair_count(l, lab::PairCounting::Ordered);
      const auto unordered = lab::preimage_pair_count(l, lab::PairCounting::Unordered);
      report.estimates[std::string(1, l)] = {{"ordered", ordered}, {"unordered", unordered},
                                             {"guess_probability_unordered", 1.0 / unordered}};
      total += static_cast<std::size_t>(ordered);
    }
    report.sample_sizes = {{"ordered_total", total}};
  } else {
    const auto r = lab::cue_recovery_min_images(a.primed, a.unprimed, a.max_fpr, a.min_tpr);
    report.kind = "cue";
    report.parameters = {{"primed", a.primed}, {"unprimed", a.unprimed},
                         {"max_fpr", a.max_fpr}, {"min_tpr", a.min_tpr}};
    report.estimates = {{"images", r.images}, {"threshold", r.threshold}};
  }
  const fs::path dir(a.out);
  write_file(dir / (a.game + ".json"), report.to_json().dump(2) + "\n");
  write_file(dir / (a.game + ".csv"), report.to_csv());
  std::cout << report.to_json().dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string scheme = "memory-palace";
  int epochs = 100;
  std::size_t records = 500;
  std::string input;
  std::uint64_t seed = 0;
  double learning_rate = 0.05;
  int ngram_order = 3;
  std::string out = "results/train";
};

int run_train(const TrainArgs& a) {
  const auto scheme = schemes::scheme_from_string(a.scheme);
  if (a.epochs < 1) throw Error(ErrorKind::Config, "--epochs must be at least 1");
  if (a.ngram_order < 1) throw Error(ErrorKind::Config, "--ngram-order must be at least 1");
  log_seed(a.seed);
  std::vector<std::string> passwords;
  if (!a.input.empty()) {
    for (const auto& r : load_or_fail(a.input)) {
      if (r.scheme == a.scheme) passwords.push_back(r.password);
    }
  } else {
    passwords = predictor::synthetic_passwords(scheme, a.records, a.seed);
  }
  predictor::TrainConfig config;
  config.epochs = a.epochs;
  config.seed = a.seed;
  config.learning_rate = a.learning_rate;
  const auto result = predictor::train(passwords, config);
  const predictor::NgramModel ngram(a.ngram_order, passwords);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  result.model.save(dir / (a.scheme + "-checkpoint.json"));
  write_file(dir / (a.scheme + "-loss.csv"), predictor::loss_curve_csv(result.epoch_loss));
  const json summary = {{"scheme", a.scheme},
                        {"seed", a.seed},
                        {"epochs", a.epochs},
                        {"passwords", passwords.size()},
                        {"final_loss", result.epoch_loss.back()},
                        {"lstm_last_char_accuracy", predictor::last_char_accuracy(result.model, passwords)},
                        {"ngram_order", a.ngram_order},
                        {"ngram_last_char_accuracy", predictor::last_char_accuracy(ngram, passwords)}};
  write_file(dir / (a.scheme + "-summary.json"), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = -1;
  std::string store;
  int idle_minutes = 30;
  std::string static_dir;
};

service::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int run_serve(const ServeArgs& a) {
  if (a.idle_minutes < 1) throw Error(ErrorKind::Config, "--idle-minutes must be at least 1");
  service::SessionOptions options;
  options.idle_timeout = std::chrono::minutes(a.idle_minutes);
  if (!a.store.empty()) options.store = std::make_shared<store::RecordStore>(a.store);
  service::SessionManager sessions(options);
  service::ServiceOptions sopts;
  sopts.host = a.host;
  sopts.port = a.port >= 0 ? a.port : service::port_from_environment(sopts.port);
  sopts.static_dir = a.static_dir;
  service::Service server(sessions, sopts);
  const int port = server.bind();
  std::cout << "listening on http://" << a.host << ':' << port << "/v1" << std::endl;
  g_service = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mindhash: human-computable password schemes and their analysis"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Run one scheme for one website");
  generate->add_option("--scheme", gen.scheme, "memory-palace | scrambled-box | song | internal-sentence")->required();
  generate->add_option("--website", gen.website, "Account name")->required();
  generate->add_option("--seed", gen.seed, "Simulated user seed");
  generate->add_flag("--trace", gen.trace, "Print the full output with intermediates as JSON");
  generate->add_option("--model", gen.model, "Simulated user exported as JSON");
  generate->add_option("--answers", gen.answers, "Scripted answers keyed by prompt");

  std::string replay_input;
  auto* replay = app.add_subcommand("replay", "Recompute a password from a --trace document");
  replay->add_option("input", replay_input, "JSON written by generate --trace")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Write simulated password records");
  simulate->add_option("--scheme", sim.schemes, "Scheme ids or 'all'");
  simulate->add_option("--users", sim.users, "Simulated users");
  simulate->add_option("--websites", sim.websites, "Account names")->delimiter(',');
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--out", sim.out, "JSON-lines output file");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Compute summary tables over a record store");
  analyze->add_option("--input", an.input, "JSON-lines records");
  analyze->add_option("--csv", an.csv_input, "Survey CSV with default column names");
  analyze->add_option("--out", an.out, "Output directory");
  analyze->add_flag("--summary", an.summary, "Per-scheme summary table");
  analyze->add_flag("--symbols", an.symbols, "Special-character rank frequency");
  analyze->add_flag("--capitalization", an.capitalization, "Uppercase counts by position");
  analyze->add_flag("--policy", an.policy, "Password policy compliance");
  analyze->add_flag("--degradation", an.degradation, "Difficulty against education slope");

  AttackArgs at;
  auto* attack = app.add_subcommand("attack", "Run a security experiment");
  attack->add_option("--game", at.game, "ufrca | collision | avalanche | preimage | cue")->required();
  attack->add_option("--scheme", at.scheme, "Scheme id");
  attack->add_option("--adversary", at.adversary, "uniform_random | charset_aware_random | dictionary_sentence | frequency_reuse");
  attack->add_option("--k", at.k, "Observed (website, password) pairs");
  attack->add_option("--trials", at.trials, "Forgery trials");
  attack->add_option("--users", at.users, "Simulated users");
  attack->add_option("--websites", at.websites, "Account names")->delimiter(',');
  attack->add_option("--seed", at.seed, "Master seed");
  attack->add_option("--threads", at.threads, "Worker threads; results do not depend on it");
  attack->add_option("--primed", at.primed, "Primed labelling accuracy p");
  attack->add_option("--unprimed", at.unprimed, "Unprimed labelling accuracy n");
  attack->add_option("--max-fpr", at.max_fpr, "Largest acceptable false positive rate");
  attack->add_option("--min-tpr", at.min_tpr, "Smallest acceptable true positive rate");
  attack->add_option("--out", at.out, "Output directory");

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train the next-character predictors for one scheme");
  train->add_option("--scheme", tr.scheme, "Scheme id")->required();
  train->add_option("--epochs", tr.epochs, "Training epochs");
  train->add_option("--records", tr.records, "Synthetic passwords when no --input is given");
  train->add_option("--input", tr.input, "JSON-lines records to train on");
  train->add_option("--seed", tr.seed, "Master seed");
  train->add_option("--learning-rate", tr.learning_rate, "SGD step size");
  train->add_option("--ngram-order", tr.ngram_order, "Context length of the n-gram baseline");
  train->add_option("--out", tr.out, "Output directory");

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "Run the local session service");
  serve->add_option("--host", sv.host, "Bind address");
  serve->add_option("--port", sv.port, std::string("Port (default $") + service::kPortVariable + " or 8787)");
  serve->add_option("--store", sv.store, "JSON-lines file for sessions that opt in");
  serve->add_option("--idle-minutes", sv.idle_minutes, "Session idle timeout");
  serve->add_option("--static", sv.static_dir, "Directory of front-end assets to serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*replay) return run_replay(replay_input);
    if (*simulate) return run_simulate(sim);
    if (*analyze) return run_analyze(an);
    if (*attack) return run_attack(at);
    if (*train) return run_train(tr);
    if (*serve) return run_serve(sv);
  } catch (const Error& e) {
    std::cerr << "mindhash: " << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kUsageExit : kRuntimeExit;
  } catch (const std::exception& e) {
    std::cerr << "mindhash: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return kUsageExit;
}
