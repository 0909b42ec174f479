// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mindhash/corpus_store.hpp"
#include "mindhash/csv.hpp"
#include "mindhash/error.hpp"

using namespace mindhash;
using namespace mindhash::store;

namespace {

PasswordRecord sample(std::string id) {
  PasswordRecord r;
  r.id = std::move(id);
  r.scheme = "memory-palace";
  r.website = "gmail";
  r.password = "e4cdgtaqw3";
  r.source = {RecordSource::Kind::Simulated, 42, {}};
  r.created_at = "2026-10-16T09:30:00Z";
  r.recall_attempts = {{"e4cdgtaqw3", "2026-10-17T09:30:00Z"}, {"e4cdgt", "2026-10-23T09:30:00Z"}};
  r.difficulty = 3;
  r.education = 2;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("mindhash_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_SUITE("store") {
  TEST_CASE("csv parsing") {
    const auto rows = csv::parse("a,\"b,c\",\"d\"\"e\"\r\n1,2,\"multi\nline\"\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == "b,c");
    CHECK(rows[0][2] == "d\"e");
    CHECK(rows[1][2] == "multi\nline");
    CHECK_THROWS_AS(csv::parse("a,\"open"), Error);
    CHECK(csv::escape("x,y") == "\"x,y\"");
  }

  TEST_CASE("empty text loads nothing") {
    const auto r = parse_records("");
    CHECK(r.records.empty());
    CHECK(r.errors.empty());
  }

  TEST_CASE("records round trip") {
    const std::vector<PasswordRecord> records = {sample("r1"), sample("r2")};
    const auto text = serialize_records(records);
    const auto back = parse_records(text);
    CHECK(back.errors.empty());
    CHECK(back.records == records);
    CHECK(serialize_records(back.records) == text);
  }

  TEST_CASE("unknown fields survive a round trip") {
    const std::string line =
        R"({"id":"x","scheme":"song","password":"p","website":"w","source":{"kind":"human","session":"s1"},"created_at":"","mood":"sunny"})";
    const auto r = parse_records(line + "\n");
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].extra.at("mood") == "sunny");
    CHECK(serialize_records(r.records).find("\"mood\":\"sunny\"") != std::string::npos);
  }

  TEST_CASE("a malformed line is isolated") {
    std::ostringstream text;
    text << serialize_records(std::vector<PasswordRecord>{sample("a"), sample("b")});
    text << "{not json\n";
    text << serialize_records(std::vector<PasswordRecord>{sample("c"), sample("d")});
    const auto r = parse_records(text.str());
    CHECK(r.records.size() == 4);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].line == 3);
  }

  TEST_CASE("invariants") {
    auto bad = sample("z");
    bad.difficulty = 9;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = sample("z");
    bad.password.clear();
    CHECK_THROWS_AS(validate(bad), Error);
    bad = sample("z");
    std::swap(bad.recall_attempts[0], bad.recall_attempts[1]);
    CHECK_THROWS_AS(validate(bad), Error);
    const auto dup = serialize_records(std::vector<PasswordRecord>{sample("q"), sample("q")});
    CHECK(parse_records(dup).errors.size() == 1);
  }

  TEST_CASE("file save, append and record store") {
    const auto path = scratch("store.jsonl");
    const std::vector<PasswordRecord> first = {sample("a")};
    save_records(path, first);
    append_records(path, std::vector<PasswordRecord>{sample("b")});
    CHECK(load_records(path).records.size() == 2);

    RecordStore store(path);
    auto fresh = sample("");
    const auto stored = store.append(fresh);
    CHECK_FALSE(stored.id.empty());
    CHECK_THROWS_AS(store.append(sample("a")), Error);
    CHECK(store.load().records.size() == 3);
    std::filesystem::remove(path);
  }

  TEST_CASE("survey csv import") {
    const auto minimal = import_survey_csv("scheme,password\nsong,abc\nmemory-palace,xyz\n");
    REQUIRE(minimal.records.size() == 2);
    CHECK_FALSE(minimal.records[0].difficulty.has_value());
    CHECK(minimal.records[0].recall_attempts.empty());

    const auto mixed = import_survey_csv("scheme,password,difficulty\nsong,abc,9\nsong,def,4\n");
    CHECK(mixed.records.size() == 1);
    REQUIRE(mixed.rejected.size() == 1);
    CHECK(mixed.rejected[0].row == 1);
    CHECK(mixed.rejected[0].message.find("difficulty") != std::string::npos);

    CHECK_THROWS_AS(import_survey_csv("scheme,website\nsong,gmail\n"), Error);

    ColumnMapping renamed;
    renamed.scheme = "Method";
    renamed.password = "Pw";
    CHECK(import_survey_csv("Method,Pw\nsong,abc\n", renamed).records.size() == 1);
  }

  TEST_CASE("survey csv export matches import") {
    auto r = sample("k1");
    r.source = {RecordSource::Kind::Human, 0, {}};
    r.recall_attempts = {{"e4cdgt", ""}};
    const std::vector<PasswordRecord> records = {r};
    const auto text = export_survey_csv(records);
    const auto back = import_survey_csv(text);
    REQUIRE(back.records.size() == 1);
    CHECK(back.records[0] == r);
    CHECK(export_survey_csv(back.records) == text);
  }
}
