// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string command = std::string(MINDHASH_CLI) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) run.out.append(buffer, n);
  const int status = ::pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "mindhash_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate is deterministic per seed") {
    for (const char* scheme : {"memory-palace", "scrambled-box", "song", "internal-sentence"}) {
      const std::string args = std::string("generate --scheme ") + scheme + " --website gmail --seed 11";
      const auto a = cli(args);
      const auto b = cli(args);
      CHECK(a.code == 0);
      CHECK_FALSE(a.out.empty());
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("bad input exits with a usage code") {
    CHECK(cli("generate --scheme rot13 --website gmail").code == 2);
    CHECK(cli("generate --website gmail").code == 2);
    CHECK(cli("train --scheme song --epochs 0 --records 10").code == 2);
    CHECK(cli("no-such-command").code == 2);
  }

  TEST_CASE("trace replays to the same password") {
    const auto dir = scratch("trace");
    const auto r = cli("generate --scheme song --website amazon --seed 4 --trace");
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    { std::ofstream(dir / "t.json") << r.out; }
    const auto replayed = cli("replay " + (dir / "t.json").string());
    CHECK(replayed.code == 0);
    CHECK(replayed.out == doc.at("password").get<std::string>() + "\n");

    auto tampered = doc;
    tampered["password"] = "not-it";
    { std::ofstream(dir / "bad.json") << tampered.dump(); }
    CHECK(cli("replay " + (dir / "bad.json").string()).code == 1);
  }

  TEST_CASE("simulate then analyze") {
    const auto dir = scratch("analyze");
    const auto records = dir / "records.jsonl";
    REQUIRE(cli("simulate --scheme all --users 5 --websites gmail,amazon --seed 3 --out " +
                records.string()).code == 0);
    CHECK(cli("analyze --summary --symbols --capitalization --policy --input " + records.string() +
              " --out " + (dir / "out").string()).code == 0);
    const auto summary = slurp(dir / "out" / "summary.csv");
    CHECK(summary.rfind("scheme,", 0) == 0);
    CHECK(summary.find("memory-palace") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "symbols.csv"));
    CHECK(fs::exists(dir / "out" / "capitalization.csv"));
    CHECK(fs::exists(dir / "out" / "policy.csv"));
  }

  TEST_CASE("attack writes a report") {
    const auto dir = scratch("attack");
    const auto r = cli("attack --game ufrca --scheme internal-sentence --adversary dictionary "
                       "--k 5 --trials 40 --seed 9 --threads 2 --out " + dir.string());
    REQUIRE(r.code == 0);
    const auto report = json::parse(slurp(dir / "ufrca.json"));
    CHECK(report.at("kind") == "ufrca");
    CHECK(report.at("seed") == 9);
    CHECK(report.at("sample_sizes").at("trials") == 40);
    CHECK(fs::exists(dir / "ufrca.csv"));
    CHECK(json::parse(r.out) == report);

    const auto cue = cli("attack --game cue --primed 0.9 --unprimed 0.5 --out " + dir.string());
    REQUIRE(cue.code == 0);
    CHECK(json::parse(cue.out).at("estimates").at("images") == 26);
    CHECK(cli("attack --game cue --primed 0.4 --unprimed 0.5 --out " + dir.string()).code != 0);
  }

  TEST_CASE("train writes checkpoint, loss curve and summary") {
    const auto dir = scratch("train");
    const auto r = cli("train --scheme song --epochs 2 --records 20 --seed 5 --out " + dir.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "song-checkpoint.json"));
    const auto loss = slurp(dir / "song-loss.csv");
    CHECK(loss.rfind("epoch,loss", 0) == 0);
    CHECK(std::count(loss.begin(), loss.end(), '\n') == 3);
    const auto summary = json::parse(slurp(dir / "song-summary.json"));
    CHECK(summary.at("epochs") == 2);
    CHECK(summary.at("passwords") == 20);
  }

  TEST_CASE("options from a config file") {
    const auto dir = scratch("config");
    { std::ofstream(dir / "c.json") << R"({"generate": {"scheme": "memory-palace", "website": "gmail", "seed": 11}})"; }
    const auto from_file = cli("--config " + (dir / "c.json").string() + " generate");
    const auto direct = cli("generate --scheme memory-palace --website gmail --seed 11");
    CHECK(from_file.code == 0);
    CHECK(from_file.out == direct.out);
  }
}
