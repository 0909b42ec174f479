// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "mindhash/session.hpp"

namespace mindhash::service {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8787;  // 0 picks a free port
  std::filesystem::path static_dir;  // optional front-end assets
};

/// Environment variable that overrides the default port.
inline constexpr const char* kPortVariable = "MINDHASH_PORT";

/// Port from MINDHASH_PORT, else `fallback`. Throws ConfigError on junk.
int port_from_environment(int fallback);

/// JSON API under /v1:
///   GET  /v1/health
///   GET  /v1/schemes
///   GET  /v1/layout
///   POST /v1/sessions               {scheme, website, box_seed?, box?, persist?}
///   GET  /v1/sessions/{id}
///   POST /v1/sessions/{id}/answer   {answer}
///   GET  /v1/sessions/{id}/result
///   POST /v1/sessions/{id}/recall   {attempt}
/// Errors are {error, message} with 400 (malformed body), 404 (unknown
/// session), 409 (wrong state), 410 (expired) or 422 (invalid answer).
class Service {
 public:
  Service(SessionManager& sessions, ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket; returns the bound port. Throws ConfigError.
  int bind();
  /// Serves until stop(); call bind() first.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mindhash::service
