// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mindhash/corpus_store.hpp"
#include "mindhash/metrics.hpp"
#include "mindhash/schemes.hpp"
#include "mindhash/scripted_source.hpp"

namespace mindhash::service {

using Clock = std::function<std::chrono::system_clock::time_point()>;

struct SessionOptions {
  std::chrono::seconds idle_timeout{30 * 60};
  Clock clock = [] { return std::chrono::system_clock::now(); };
  /// Store for sessions that opt in to persistence; null disables it.
  std::shared_ptr<store::RecordStore> store;
};

struct CreateRequest {
  schemes::SchemeId scheme = schemes::SchemeId::MemoryPalace;
  std::string website;
  std::optional<std::uint64_t> box_seed;        // scrambled box only
  std::optional<memory::CharBox> box;           // overrides box_seed
  bool persist = false;

  /// {scheme, website, box_seed?, box?, persist?}; throws ValidationError.
  static CreateRequest from_json(const nlohmann::json& doc);
};

struct RecallEntry {
  std::string attempt;
  metrics::RecallScore score;
  std::string at;
};

/// One person stepping through a scheme. Each answer reruns the scheme over
/// a ScriptedSource until it completes or asks something new, so a session
/// and a replay of its answers share one code path.
class WizardSession {
 public:
  WizardSession(std::string id, CreateRequest request);

  const std::string& id() const { return id_; }
  schemes::SchemeId scheme() const { return request_.scheme; }
  bool complete() const { return result_.has_value(); }
  std::size_t step() const { return step_; }
  const std::optional<memory::Prompt>& pending() const { return pending_; }
  const std::optional<schemes::PasswordOutput>& result() const { return result_; }
  const nlohmann::json& answers() const { return source_.answers(); }
  const memory::CharBox& box() const { return box_; }

  /// Validates against the pending prompt; on failure nothing changes.
  /// Throws Conflict once the session is complete.
  void answer(const nlohmann::json& value);

  metrics::RecallScore recall(const std::string& attempt, const std::string& at);
  const std::vector<RecallEntry>& recall_history() const { return recalls_; }

  nlohmann::json status_json() const;

 private:
  void advance();

  std::string id_;
  CreateRequest request_;
  memory::CharBox box_{};
  memory::ScriptedSource source_;
  std::size_t step_ = 0;
  std::optional<memory::Prompt> pending_;
  std::optional<schemes::PasswordOutput> result_;
  std::vector<RecallEntry> recalls_;
};

/// Thread-safe registry. Sessions idle past the timeout answer Expired and
/// are dropped on the next sweep.
class SessionManager {
 public:
  explicit SessionManager(SessionOptions options = {});

  nlohmann::json create(const CreateRequest& request);
  nlohmann::json answer(const std::string& id, const nlohmann::json& value);
  nlohmann::json status(const std::string& id);
  nlohmann::json result(const std::string& id);
  nlohmann::json recall(const std::string& id, const std::string& attempt);

  std::size_t size() const;
  /// Forgets expired sessions; returns how many were dropped.
  std::size_t sweep();

 private:
  struct Entry {
    std::unique_ptr<WizardSession> session;
    std::chrono::system_clock::time_point last_active;
    std::mutex mutex;
  };

  /// Locks the entry and refreshes its idle timer. Throws NotFound/Expired.
  std::pair<std::shared_ptr<Entry>, std::unique_lock<std::mutex>> acquire(const std::string& id);
  void persist(const WizardSession& session);

  SessionOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::set<std::string> expired_;
};

std::string new_session_id();

}  // namespace mindhash::service
