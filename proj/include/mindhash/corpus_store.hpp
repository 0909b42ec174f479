// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace mindhash::store {

struct RecallAttempt {
  std::string remembered;
  std::string at;  // ISO-8601 UTC, may be empty when unknown

  bool operator==(const RecallAttempt&) const = default;
};

struct RecordSource {
  enum class Kind { Simulated, Human };
  Kind kind = Kind::Simulated;
  std::uint64_t seed = 0;   // simulated
  std::string session;      // human

  bool operator==(const RecordSource&) const = default;
};

/// One generated (or imported) password and what happened to it later.
struct PasswordRecord {
  std::string id;
  std::string scheme;
  std::string website;
  std::string password;
  RecordSource source;
  std::string created_at;
  std::vector<RecallAttempt> recall_attempts;
  std::optional<int> difficulty;  // 1-7
  std::optional<int> education;   // ordinal, higher is more education
  nlohmann::json extra = nlohmann::json::object();  // unknown fields, kept verbatim

  bool operator==(const PasswordRecord&) const = default;
};

/// Throws SchemaError describing the first violated invariant.
void validate(const PasswordRecord& record);

nlohmann::json to_json(const PasswordRecord& record);
PasswordRecord record_from_json(const nlohmann::json& doc);

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct LoadResult {
  std::vector<PasswordRecord> records;
  std::vector<LineError> errors;
};

/// JSON-lines. A bad line is reported and skipped; the rest still load.
LoadResult parse_records(std::string_view text);
LoadResult load_records(const std::filesystem::path& path);

std::string serialize_records(std::span<const PasswordRecord> records);
/// Rewrites the file through a temporary and a rename.
void save_records(const std::filesystem::path& path, std::span<const PasswordRecord> records);
/// Each record goes out in a single O_APPEND write.
void append_records(const std::filesystem::path& path, std::span<const PasswordRecord> records);

/// e.g. 2026-10-16T09:30:00Z.
std::string iso8601(std::chrono::system_clock::time_point at);
std::string now_iso8601();

/// Fresh id unique with overwhelming probability.
std::string new_record_id();

/// Appends records to a JSONL file, giving each a unique id.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// Fills in missing id / created_at, validates, checks the id is new,
  /// then appends. Returns the stored record.
  PasswordRecord append(PasswordRecord record);

  LoadResult load() const;

 private:
  std::filesystem::path path_;
};

// ------------------------------------------------------------------ CSV

struct ColumnMapping {
  std::string scheme = "scheme";
  std::string password = "password";
  std::string website = "website";
  std::string recall = "recall";
  std::string difficulty = "difficulty";
  std::string education = "education";
  std::string id = "id";
  std::string created_at = "created_at";
};

struct RowError {
  std::size_t row = 0;  // 1-based data row, header excluded
  std::string message;
};

struct ImportResult {
  std::vector<PasswordRecord> records;
  std::vector<RowError> rejected;
};

/// Throws SchemaError when the scheme or password column is missing.
/// Optional columns may be absent; invalid rows are rejected with a reason.
ImportResult import_survey_csv(std::string_view text, const ColumnMapping& mapping = {});
ImportResult import_survey_csv_file(const std::filesystem::path& path,
                                    const ColumnMapping& mapping = {});

/// Writes every mapped column; the first recall attempt fills `recall`.
std::string export_survey_csv(std::span<const PasswordRecord> records,
                              const ColumnMapping& mapping = {});

}  // namespace mindhash::store
