#include "plagdet/service_client.hpp"

#include <condition_variable>
#include <mutex>
#include <vector>

#include <httplib.h>

#include "plagdet/errors.hpp"

namespace plagdet {

struct ServiceClient::Impl {
  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::unique_ptr<httplib::Client>> idle;

  std::unique_ptr<httplib::Client> acquire() {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return !idle.empty(); });
    auto c = std::move(idle.back());
    idle.pop_back();
    return c;
  }
  void release(std::unique_ptr<httplib::Client> c) {
    {
      std::lock_guard lock(mu);
      idle.push_back(std::move(c));
    }
    cv.notify_one();
  }
};

ServiceClient::ServiceClient(std::string base_url, std::chrono::milliseconds timeout,
                             unsigned max_in_flight)
    : base_url_(std::move(base_url)), timeout_(timeout), impl_(std::make_unique<Impl>()) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  for (unsigned i = 0; i < std::max(1u, max_in_flight); ++i) {
    std::unique_ptr<httplib::Client> c;
    try {
      c = std::make_unique<httplib::Client>(base_url_);
    } catch (const std::exception &e) {
      throw ServiceError("invalid service URL '" + base_url_ + "': " + e.what());
    }
    if (!c->is_valid()) throw ServiceError("invalid service URL '" + base_url_ + "'");
    c->set_connection_timeout(secs.count(), usecs.count());
    c->set_read_timeout(secs.count(), usecs.count());
    c->set_write_timeout(secs.count(), usecs.count());
    impl_->idle.push_back(std::move(c));
  }
}

ServiceClient::~ServiceClient() = default;

namespace {

nlohmann::json parse_response(const httplib::Result &res, const std::string &what) {
  if (!res) throw ServiceError(what + ": " + httplib::to_string(res.error()));
  if (res->status != 200) throw ServiceError(what + ": HTTP status " + std::to_string(res->status));
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error &) {
    throw ServiceError(what + ": response is not JSON");
  }
}

}  // namespace

nlohmann::json ServiceClient::post(std::string_view path, const nlohmann::json &body) const {
  auto c = impl_->acquire();
  auto res = c->Post(std::string(path), body.dump(), "application/json");
  impl_->release(std::move(c));
  return parse_response(res, "POST " + base_url_ + std::string(path));
}

nlohmann::json ServiceClient::get(std::string_view path) const {
  auto c = impl_->acquire();
  auto res = c->Get(std::string(path));
  impl_->release(std::move(c));
  return parse_response(res, "GET " + base_url_ + std::string(path));
}

bool ServiceClient::healthy() const {
  try {
    auto j = get("/v1/health");
    return j.is_object() && j.value("status", "") == "ok";
  } catch (const ServiceError &) {
    return false;
  }
}

}  // namespace plagdet
