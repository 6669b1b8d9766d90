#include "gamekg/app/server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "gamekg/error.hpp"

namespace gamekg::app {

namespace {

constexpr const char* kJson = "application/json";

std::string_view generic_message(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "the request is malformed";
    case ErrorCode::not_found: return "no such resource";
    case ErrorCode::integrity: return "the request conflicts with the graph";
    case ErrorCode::parse: return "the request body is not valid JSON";
    case ErrorCode::io: return "storage failure";
    case ErrorCode::pool_exhausted: return "no pseudonyms left for this case";
    case ErrorCode::no_case: return "no case is available";
    case ErrorCode::expired: return "the case has expired";
    case ErrorCode::unauthorized: return "operator token required";
  }
  return "error";
}

void send_error(httplib::Response& res, ErrorCode code) {
  nlohmann::ordered_json body;
  body["error"] = to_string(code);
  body["message"] = generic_message(code);
  res.status = http_status(code);
  res.set_content(body.dump(), kJson);
}

std::string bearer(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view prefix = "Bearer ";
  if (header.size() <= prefix.size() || header.compare(0, prefix.size(), prefix) != 0) return {};
  return header.substr(prefix.size());
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::validation, std::string("request body: ") + e.what());
  }
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation:
    case ErrorCode::parse: return 400;
    case ErrorCode::unauthorized: return 401;
    case ErrorCode::not_found:
    case ErrorCode::expired:
    case ErrorCode::no_case: return 404;
    case ErrorCode::integrity: return 409;
    case ErrorCode::pool_exhausted: return 503;
    case ErrorCode::io: return 500;
  }
  return 500;
}

struct ApiServer::Impl {
  CurationService& service;
  httplib::Server http;

  explicit Impl(CurationService& s) : service(s) {}

  // Runs `handler`, mapping exceptions onto error responses.
  template <typename Handler>
  httplib::Server::Handler guarded(Handler handler, bool operator_only) {
    return [this, handler, operator_only](const httplib::Request& req, httplib::Response& res) {
      try {
        if (operator_only && !service.authorized(bearer(req))) {
          fail(ErrorCode::unauthorized, "missing or wrong operator token");
        }
        handler(req, res);
      } catch (const Error& e) {
        spdlog::info("{} {} -> {}: {}", req.method, req.path, to_string(e.code()), e.what());
        send_error(res, e.code());
      } catch (const std::exception& e) {
        spdlog::error("{} {} failed: {}", req.method, req.path, e.what());
        res.status = 500;
        res.set_content(R"({"error":"internal","message":"internal error"})", kJson);
      }
    };
  }

  void routes() {
    http.Get("/api/v1/case/next", guarded(
                                      [this](const httplib::Request&, httplib::Response& res) {
                                        res.set_content(service.next_case().dump(), kJson);
                                      },
                                      false));
    http.Post("/api/v1/feedback", guarded(
                                      [this](const httplib::Request& req, httplib::Response& res) {
                                        res.set_content(
                                            service.submit_feedback(parse_body(req)).dump(), kJson);
                                      },
                                      false));
    http.Post("/api/v1/qa", guarded(
                                [this](const httplib::Request& req, httplib::Response& res) {
                                  res.set_content(service.ask(parse_body(req)).dump(), kJson);
                                },
                                service.config().qa_requires_operator));
    http.Get("/api/v1/candidates", guarded(
                                       [this](const httplib::Request&, httplib::Response& res) {
                                         res.set_content(service.candidates().dump(), kJson);
                                       },
                                       true));
    http.Get("/api/v1/kg", guarded(
                               [this](const httplib::Request& req, httplib::Response& res) {
                                 const std::string view =
                                     req.has_param("view") ? req.get_param_value("view")
                                                           : "filtered";
                                 if (view != "filtered" && view != "full") {
                                   fail(ErrorCode::validation, "view must be filtered or full");
                                 }
                                 res.set_content(service.export_kg(view == "filtered"),
                                                 "application/x-ndjson");
                               },
                               true));
  }
};

ApiServer::ApiServer(CurationService& service) : impl_(std::make_unique<Impl>(service)) {
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) fail(ErrorCode::io, "cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    fail(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

bool ApiServer::serve() { return impl_->http.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void ApiServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace gamekg::app
