#pragma once

#include <memory>
#include <string>

#include "gamekg/app/service.hpp"
#include "gamekg/error.hpp"

namespace gamekg::app {

/// HTTP adapter over CurationService. Routes live under /api/v1; error
/// bodies are {"error": <code>, "message": <generic text>} and never echo
/// graph content.
class ApiServer {
 public:
  explicit ApiServer(CurationService& service);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds without serving. Returns the bound port; port 0 picks a free one.
  int bind(const std::string& host, int port);

  /// Serves until stop(). Call after bind().
  bool serve();

  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// HTTP status for an error code.
int http_status(ErrorCode code) noexcept;

}  // namespace gamekg::app
