// SPDX-License-Identifier: Apache-2.0
#include "mindhash/service.hpp"

#include <httplib.h>

#include <cstdlib>

#include "mindhash/error.hpp"
#include "mindhash/keyboard.hpp"

namespace mindhash::service {

using nlohmann::json;

int port_from_environment(int fallback) {
  const char* raw = std::getenv(kPortVariable);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long port = std::strtol(raw, &end, 10);
  if (*end != '\0' || port < 0 || port > 65535) {
    throw Error(ErrorKind::Config, std::string(kPortVariable) + " is not a port number");
  }
  return static_cast<int>(port);
}

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound: return 404;
    case ErrorKind::Expired: return 410;
    case ErrorKind::Conflict: return 409;
    default: return 422;
  }
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view kind,
                const std::string& message) {
  send(res, status, {{"error", kind}, {"message", message}});
}

json layout_json(const keyboard::KeyboardLayout& layout) {
  json rows = json::array();
  for (std::size_t r = 0; r < layout.rows().size(); ++r) {
    const auto& row = layout.rows()[r];
    json keys = json::array();
    for (const auto& key : row.keys) {
      const auto pos = layout.locate(key.base);
      keys.push_back({{"base", std::string(1, key.base)},
                      {"shifted", std::string(1, key.shifted)},
                      {"column", key.column},
                      {"x", pos.x},
                      {"y", pos.y}});
    }
    rows.push_back({{"name", row.name}, {"offset", row.offset}, {"keys", keys}});
  }
  return {{"rows", rows}};
}

// Runs a handler, turning library errors into JSON error responses.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const json::exception& e) {
    send_error(res, 400, "BadRequest", e.what());
  } catch (const Error& e) {
    send_error(res, status_for(e.kind()), to_string(e.kind()), e.what());
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

struct Service::Impl {
  Impl(SessionManager& s, ServiceOptions o) : sessions(s), options(std::move(o)) {}

  SessionManager& sessions;
  ServiceOptions options;
  httplib::Server server;
};

Service::Service(SessionManager& sessions, ServiceOptions options)
    : impl_(std::make_unique<Impl>(sessions, std::move(options))) {
  auto& server = impl_->server;
  auto& manager = impl_->sessions;

  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"status", "ok"}});
  });
  server.Get("/v1/schemes", [](const httplib::Request&, httplib::Response& res) {
    json ids = json::array();
    for (auto id : schemes::kAllSchemes) ids.push_back(schemes::to_string(id));
    send(res, 200, {{"schemes", ids}});
  });
  server.Get("/v1/layout", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, layout_json(keyboard::KeyboardLayout::qwerty()));
  });
  server.Post("/v1/sessions", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 201, manager.create(CreateRequest::from_json(parse_body(req)))); });
  });
  server.Get(R"(/v1/sessions/([A-Za-z0-9]+))",
             [&manager](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { send(res, 200, manager.status(req.matches[1])); });
             });
  server.Post(R"(/v1/sessions/([A-Za-z0-9]+)/answer)",
              [&manager](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const json body = parse_body(req);
                  if (!body.is_object() || !body.contains("answer")) {
                    send_error(res, 400, "BadRequest", "body must be {\"answer\": ...}");
                    return;
                  }
                  send(res, 200, manager.answer(req.matches[1], body.at("answer")));
                });
              });
  server.Get(R"(/v1/sessions/([A-Za-z0-9]+)/result)",
             [&manager](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { send(res, 200, manager.result(req.matches[1])); });
             });
  server.Post(R"(/v1/sessions/([A-Za-z0-9]+)/recall)",
              [&manager](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const json body = parse_body(req);
                  send(res, 200,
                       manager.recall(req.matches[1], body.at("attempt").get<std::string>()));
                });
              });
  if (!impl_->options.static_dir.empty()) {
    server.set_mount_point("/", impl_->options.static_dir.string());
  }
}

Service::~Service() { stop(); }

int Service::bind() {
  auto& o = impl_->options;
  int port = o.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(o.host);
  } else if (!impl_->server.bind_to_port(o.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error(ErrorKind::Config, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return port;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace mindhash::service
