#pragma once

#include <memory>
#include <string>

#include "api/store.hpp"
#include "common/error.hpp"
#include "server/config.hpp"

namespace semreg::server {

int http_status(ErrorCode code) noexcept;

// Loads the configured domains that the store does not know yet.
void seed_domains(api::Store& store, const ServerConfig& config);

class HttpServer {
 public:
  HttpServer(api::Store& store, std::string token);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  // Serves on a background thread until stop().
  void start();
  void stop();
  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace semreg::server
