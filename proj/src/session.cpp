// SPDX-License-Identifier: Apache-2.0
#include "mindhash/session.hpp"

#include <random>

#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/rng.hpp"

namespace mindhash::service {

using nlohmann::json;

namespace {

json prompt_json(const memory::Prompt& prompt) {
  return {{"kind", prompt.kind}, {"key", prompt.key}, {"payload", prompt.payload}};
}

std::uint64_t fresh_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

}  // namespace

std::string new_session_id() {
  static constexpr char kHex[] = "0123456789abcdef";
  std::random_device device;
  std::string id = "s";
  for (int i = 0; i < 32; ++i) id.push_back(kHex[device() & 0xf]);
  return id;
}

CreateRequest CreateRequest::from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "request body must be an object");
  CreateRequest r;
  try {
    r.scheme = schemes::scheme_from_string(doc.at("scheme").get<std::string>());
    r.website = doc.at("website").get<std::string>();
    if (doc.contains("box_seed")) r.box_seed = doc.at("box_seed").get<std::uint64_t>();
    if (doc.contains("box")) r.box = schemes::box_from_json(doc.at("box"));
    r.persist = doc.value("persist", false);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("bad session request: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, e.what());
  }
  if (memory::normalize_website(r.website).empty()) {
    throw Error(ErrorKind::Validation, "website must contain letters");
  }
  return r;
}

// ----------------------------------------------------------------- session

WizardSession::WizardSession(std::string id, CreateRequest request)
    : id_(std::move(id)), request_(std::move(request)) {
  if (request_.box) {
    box_ = *request_.box;
  } else {
    box_ = schemes::box_for_user(request_.box_seed.value_or(fresh_seed()));
  }
  advance();
}

void WizardSession::advance() {
  schemes::SchemeContext context;
  context.box = box_;
  try {
    result_ = schemes::run_scheme(request_.scheme, source_, request_.website, context);
    pending_.reset();
  } catch (const memory::PendingQuery& query) {
    pending_ = query.prompt();
  }
}

void WizardSession::answer(const json& value) {
  if (complete()) throw Error(ErrorKind::Conflict, "session is complete");
  // Work on a copy so a rejected answer leaves the session untouched.
  memory::ScriptedSource candidate(source_.answers());
  candidate.answer(*pending_, value);
  memory::ScriptedSource previous = source_;
  source_ = std::move(candidate);
  try {
    advance();
  } catch (const Error& e) {
    // The answer fit its prompt but broke a later scheme step.
    source_ = std::move(previous);
    advance();
    throw Error(ErrorKind::Validation, e.what());
  }
  ++step_;
}

metrics::RecallScore WizardSession::recall(const std::string& attempt, const std::string& at) {
  if (!complete()) throw Error(ErrorKind::Conflict, "session is not complete");
  const auto score = metrics::recall_score(result_->password, attempt);
  recalls_.push_back({attempt, score, at});
  return score;
}

json WizardSession::status_json() const {
  json doc = {{"id", id_},
              {"scheme", schemes::to_string(request_.scheme)},
              {"website", request_.website},
              {"step", step_},
              {"state", complete() ? "complete" : "pending"},
              {"persist", request_.persist}};
  if (pending_) doc["prompt"] = prompt_json(*pending_);
  return doc;
}

// ----------------------------------------------------------------- manager

SessionManager::SessionManager(SessionOptions options) : options_(std::move(options)) {}

json SessionManager::create(const CreateRequest& request) {
  if (request.persist && !options_.store) {
    throw Error(ErrorKind::Validation, "this service was started without a record store");
  }
  auto entry = std::make_shared<Entry>();
  entry->session = std::make_unique<WizardSession>(new_session_id(), request);
  entry->last_active = options_.clock();
  json status = entry->session->status_json();
  if (entry->session->complete()) persist(*entry->session);
  std::lock_guard lock(mutex_);
  sessions_[entry->session->id()] = entry;
  return status;
}

std::pair<std::shared_ptr<SessionManager::Entry>, std::unique_lock<std::mutex>>
SessionManager::acquire(const std::string& id) {
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard lock(mutex_);
    if (expired_.count(id)) throw Error(ErrorKind::Expired, "session expired");
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorKind::NotFound, "no such session");
    entry = it->second;
  }
  std::unique_lock entry_lock(entry->mutex);
  const auto now = options_.clock();
  if (now - entry->last_active > options_.idle_timeout) {
    entry_lock.unlock();
    std::lock_guard lock(mutex_);
    sessions_.erase(id);
    expired_.insert(id);
    throw Error(ErrorKind::Expired, "session expired");
  }
  entry->last_active = now;
  return {entry, std::move(entry_lock)};
}

json SessionManager::answer(const std::string& id, const json& value) {
  auto [entry, lock] = acquire(id);
  entry->session->answer(value);
  if (entry->session->complete()) persist(*entry->session);
  return entry->session->status_json();
}

json SessionManager::status(const std::string& id) {
  auto [entry, lock] = acquire(id);
  return entry->session->status_json();
}

json SessionManager::result(const std::string& id) {
  auto [entry, lock] = acquire(id);
  const auto& session = *entry->session;
  if (!session.complete()) throw Error(ErrorKind::Conflict, "session is not complete");
  json doc = session.result()->to_json();
  doc["answers"] = session.answers();
  return doc;
}

json SessionManager::recall(const std::string& id, const std::string& attempt) {
  auto [entry, lock] = acquire(id);
  const auto score = entry->session->recall(attempt, store::iso8601(options_.clock()));
  json history = json::array();
  for (const auto& r : entry->session->recall_history()) {
    history.push_back({{"outcome", metrics::to_string(r.score.outcome)},
                       {"ratio", r.score.ratio},
                       {"at", r.at}});
  }
  return {{"outcome", metrics::to_string(score.outcome)},
          {"ratio", score.ratio},
          {"history", history}};
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::size_t SessionManager::sweep() {
  const auto now = options_.clock();
  std::lock_guard lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
    if (entry_lock.owns_lock() && now - it->second->last_active > options_.idle_timeout) {
      expired_.insert(it->first);
      entry_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

void SessionManager::persist(const WizardSession& session) {
  if (!session.result() || !options_.store) return;
  if (!session.status_json().at("persist").get<bool>()) return;
  store::PasswordRecord record;
  record.scheme = std::string(schemes::to_string(session.scheme()));
  record.website = session.result()->website;
  record.password = session.result()->password;
  record.source.kind = store::RecordSource::Kind::Human;
  record.source.session = session.id();
  record.created_at = store::iso8601(options_.clock());
  options_.store->append(std::move(record));
}

}  // namespace mindhash::service
