#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

namespace plagdet {

// JSON-over-HTTP client for the optional model sidecar. At most
// max_in_flight requests run concurrently, each bounded by the timeout.
// Transport failures, non-200 statuses and malformed bodies all raise
// ServiceError.
class ServiceClient {
 public:
  ServiceClient(std::string base_url, std::chrono::milliseconds timeout,
                unsigned max_in_flight = 4);
  ~ServiceClient();
  ServiceClient(const ServiceClient &) = delete;
  ServiceClient &operator=(const ServiceClient &) = delete;

  nlohmann::json post(std::string_view path, const nlohmann::json &body) const;
  nlohmann::json get(std::string_view path) const;

  // GET /v1/health reports {"status": "ok"}.
  bool healthy() const;

  const std::string &base_url() const { return base_url_; }

 private:
  struct Impl;
  std::string base_url_;
  std::chrono::milliseconds timeout_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace plagdet
