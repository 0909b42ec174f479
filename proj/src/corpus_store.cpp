// SPDX-License-Identifier: Apache-2.0
#include "mindhash/corpus_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mindhash/csv.hpp"
#include "mindhash/error.hpp"
#include "mindhash/rng.hpp"

namespace mindhash::store {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownFields = {
    "id",         "scheme",          "website",    "password",  "source",
    "created_at", "recall_attempts", "difficulty", "education",
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Corpus, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_all(int fd, const std::string& data, const std::filesystem::path& path) {
  std::size_t written = 0;
  while (written < data.size()) {
    const auto n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) throw Error(ErrorKind::Corpus, "write failed: " + path.string());
    written += static_cast<std::size_t>(n);
  }
}

std::optional<int> parse_int(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Schema, "'" + text + "' is not an integer");
  }
  if (used != text.size()) throw Error(ErrorKind::Schema, "'" + text + "' is not an integer");
  return value;
}

}  // namespace

void validate(const PasswordRecord& record) {
  if (record.password.empty()) throw Error(ErrorKind::Schema, "password is empty");
  if (record.scheme.empty()) throw Error(ErrorKind::Schema, "scheme is empty");
  if (record.difficulty && (*record.difficulty < 1 || *record.difficulty > 7)) {
    throw Error(ErrorKind::Schema,
                "difficulty " + std::to_string(*record.difficulty) + " is outside 1-7");
  }
  std::string previous;
  for (const auto& attempt : record.recall_attempts) {
    if (attempt.at.empty()) continue;
    if (attempt.at < previous) {
      throw Error(ErrorKind::Schema, "recall attempts are not in timestamp order");
    }
    previous = attempt.at;
  }
}

json to_json(const PasswordRecord& record) {
  json doc = record.extra.is_object() ? record.extra : json::object();
  doc["id"] = record.id;
  doc["scheme"] = record.scheme;
  doc["website"] = record.website;
  doc["password"] = record.password;
  if (record.source.kind == RecordSource::Kind::Simulated) {
    doc["source"] = {{"kind", "simulated"}, {"seed", record.source.seed}};
  } else {
    doc["source"] = {{"kind", "human"}, {"session", record.source.session}};
  }
  doc["created_at"] = record.created_at;
  json attempts = json::array();
  for (const auto& a : record.recall_attempts) {
    attempts.push_back({{"remembered", a.remembered}, {"at", a.at}});
  }
  doc["recall_attempts"] = attempts;
  doc["difficulty"] = record.difficulty ? json(*record.difficulty) : json(nullptr);
  doc["education"] = record.education ? json(*record.education) : json(nullptr);
  return doc;
}

PasswordRecord record_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "record must be a JSON object");
  PasswordRecord r;
  try {
    r.id = doc.value("id", std::string());
    r.scheme = doc.at("scheme").get<std::string>();
    r.website = doc.value("website", std::string());
    r.password = doc.at("password").get<std::string>();
    if (doc.contains("source") && doc["source"].is_object()) {
      const auto& source = doc["source"];
      const auto kind = source.value("kind", std::string("simulated"));
      if (kind == "human") {
        r.source.kind = RecordSource::Kind::Human;
        r.source.session = source.value("session", std::string());
      } else if (kind == "simulated") {
        r.source.seed = source.value("seed", std::uint64_t{0});
      } else {
        throw Error(ErrorKind::Schema, "unknown source kind '" + kind + "'");
      }
    }
    r.created_at = doc.value("created_at", std::string());
    if (doc.contains("recall_attempts")) {
      for (const auto& a : doc["recall_attempts"]) {
        r.recall_attempts.push_back(
            {a.at("remembered").get<std::string>(), a.value("at", std::string())});
      }
    }
    if (doc.contains("difficulty") && !doc["difficulty"].is_null()) {
      r.difficulty = doc["difficulty"].get<int>();
    }
    if (doc.contains("education") && !doc["education"].is_null()) {
      r.education = doc["education"].get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownFields.contains(key)) r.extra[key] = value;
  }
  validate(r);
  return r;
}

LoadResult parse_records(std::string_view text) {
  LoadResult result;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json doc;
      try {
        doc = json::parse(line);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
      }
      auto record = record_from_json(doc);
      if (!record.id.empty() && !ids.insert(record.id).second) {
        throw Error(ErrorKind::Schema, "duplicate record id '" + record.id + "'");
      }
      result.records.push_back(std::move(record));
    } catch (const Error& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

LoadResult load_records(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return parse_records(read_file(path));
}

std::string serialize_records(std::span<const PasswordRecord> records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

void save_records(const std::filesystem::path& path, std::span<const PasswordRecord> records) {
  const auto temporary = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Corpus, "cannot write " + temporary.string());
    out << serialize_records(records);
  }
  std::filesystem::rename(temporary, path);
}

void append_records(const std::filesystem::path& path, std::span<const PasswordRecord> records) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error(ErrorKind::Corpus, "cannot open " + path.string());
  try {
    for (const auto& r : records) {
      validate(r);
      write_all(fd, to_json(r).dump() + "\n", path);
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

std::string now_iso8601() { return iso8601(std::chrono::system_clock::now()); }

std::string iso8601(std::chrono::system_clock::time_point at) {
  const auto now = std::chrono::system_clock::to_time_t(at);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string new_record_id() {
  static thread_local std::random_device device;
  const auto ticks = static_cast<std::uint64_t>(
      std::chrono::steady_clock::now().time_since_epoch().count());
  const std::uint64_t value = mix64(ticks ^ (static_cast<std::uint64_t>(device()) << 32) ^ device());
  char buffer[24];
  std::snprintf(buffer, sizeof buffer, "r%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

RecordStore::RecordStore(std::filesystem::path path) : path_(std::move(path)) {}

PasswordRecord RecordStore::append(PasswordRecord record) {
  if (record.created_at.empty()) record.created_at = now_iso8601();
  const auto existing = load();
  std::set<std::string> ids;
  for (const auto& r : existing.records) ids.insert(r.id);
  if (record.id.empty()) {
    do record.id = new_record_id();
    while (ids.contains(record.id));
  } else if (ids.contains(record.id)) {
    throw Error(ErrorKind::Schema, "record id '" + record.id + "' already stored");
  }
  validate(record);
  append_records(path_, std::span<const PasswordRecord>(&record, 1));
  return record;
}

LoadResult RecordStore::load() const { return load_records(path_); }

// ------------------------------------------------------------------ CSV

ImportResult import_survey_csv(std::string_view text, const ColumnMapping& mapping) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorKind::Schema, "CSV has no header row");
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < rows[0].size(); ++i) columns[rows[0][i]] = i;
  for (const auto* required : {&mapping.scheme, &mapping.password}) {
    if (!columns.contains(*required)) {
      throw Error(ErrorKind::Schema, "missing mandatory column '" + *required + "'");
    }
  }
  const auto field = [&](const csv::Row& row, const std::string& name) -> std::string {
    const auto it = columns.find(name);
    if (it == columns.end() || it->second >= row.size()) return {};
    return row[it->second];
  };

  ImportResult result;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    try {
      PasswordRecord record;
      record.source.kind = RecordSource::Kind::Human;
      record.id = field(row, mapping.id);
      record.scheme = field(row, mapping.scheme);
      record.password = field(row, mapping.password);
      record.website = field(row, mapping.website);
      record.created_at = field(row, mapping.created_at);
      if (const auto recall = field(row, mapping.recall); !recall.empty()) {
        record.recall_attempts.push_back({recall, ""});
      }
      record.difficulty = parse_int(field(row, mapping.difficulty));
      record.education = parse_int(field(row, mapping.education));
      validate(record);
      result.records.push_back(std::move(record));
    } catch (const Error& e) {
      result.rejected.push_back({r, e.what()});
    }
  }
  return result;
}

ImportResult import_survey_csv_file(const std::filesystem::path& path,
                                    const ColumnMapping& mapping) {
  return import_survey_csv(read_file(path), mapping);
}

std::string export_survey_csv(std::span<const PasswordRecord> records,
                              const ColumnMapping& mapping) {
  std::string out = csv::format_row({mapping.id, mapping.scheme, mapping.website,
                                     mapping.password, mapping.recall, mapping.difficulty,
                                     mapping.education, mapping.created_at});
  for (const auto& r : records) {
    out += csv::format_row({r.id, r.scheme, r.website, r.password,
                            r.recall_attempts.empty() ? "" : r.recall_attempts.front().remembered,
                            r.difficulty ? std::to_string(*r.difficulty) : "",
                            r.education ? std::to_string(*r.education) : "", r.created_at});
  }
  return out;
}

}  // namespace mindhash::store
