#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace testutil {

// In-process stand-in for the model sidecar. Handlers may be replaced
// before start().
class MockService {
 public:
  using Handler = std::function<void(const nlohmann::json &, httplib::Response &)>;

  MockService() {
    paraphrase = [](const nlohmann::json &j, httplib::Response &res) {
      double s = j["a"] == j["b"] ? 1.0 : 0.7;
      res.set_content(nlohmann::json{{"score", s}}.dump(), "application/json");
    };
    entities = [](const nlohmann::json &, httplib::Response &res) {
      res.set_content(R"({"entities":[]})", "application/json");
    };
    logprob = [](const nlohmann::json &, httplib::Response &res) {
      res.set_content(R"({"logp":-2.0})", "application/json");
    };
  }

  ~MockService() { stop(); }

  void start() {
    auto wrap = [this](Handler *h) {
      return [this, h](const httplib::Request &req, httplib::Response &res) {
        ++requests;
        int now = ++in_flight;
        int seen = max_in_flight.load();
        while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
        }
        if (delay.count() > 0) std::this_thread::sleep_for(delay);
        nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
        (*h)(body, res);
        --in_flight;
      };
    };
    server_.Post("/v1/paraphrase", wrap(&paraphrase));
    server_.Post("/v1/entities", wrap(&entities));
    server_.Post("/v1/logprob", wrap(&logprob));
    server_.Get("/v1/health", [this](const httplib::Request &, httplib::Response &res) {
      ++requests;
      res.set_content(healthy ? R"({"status":"ok"})" : R"({"status":"loading"})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  Handler paraphrase, entities, logprob;
  bool healthy = true;
  std::chrono::milliseconds delay{0};
  std::atomic<int> requests{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> max_in_flight{0};

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace testutil
