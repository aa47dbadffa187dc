#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "mock_service.hpp"
#include "plagdet/errors.hpp"
#include "plagdet/service_client.hpp"

using namespace plagdet;
using namespace std::chrono_literals;

TEST(ServiceClient, HealthAndPost) {
  testutil::MockService mock;
  mock.start();
  ServiceClient client(mock.url(), 2000ms);
  EXPECT_TRUE(client.healthy());
  auto j = client.post("/v1/paraphrase", {{"a", "x"}, {"b", "y"}});
  EXPECT_DOUBLE_EQ(j["score"].get<double>(), 0.7);
  mock.healthy = false;
  EXPECT_FALSE(client.healthy());
}

TEST(ServiceClient, FailuresBecomeServiceErrors) {
  testutil::MockService mock;
  mock.paraphrase = [](const nlohmann::json &, httplib::Response &res) {
    res.status = 500;
    res.set_content("boom", "text/plain");
  };
  mock.entities = [](const nlohmann::json &, httplib::Response &res) { res.set_content("not json", "text/plain"); };
  mock.start();
  ServiceClient client(mock.url(), 2000ms);
  EXPECT_THROW(client.post("/v1/paraphrase", {{"a", "x"}, {"b", "y"}}), ServiceError);
  EXPECT_THROW(client.post("/v1/entities", {{"text", "x"}}), ServiceError);
  EXPECT_THROW(client.get("/v1/missing"), ServiceError);

  ServiceClient dead("http://127.0.0.1:1", 300ms);
  EXPECT_FALSE(dead.healthy());
  EXPECT_THROW(dead.get("/v1/health"), ServiceError);
}

TEST(ServiceClient, TimeoutIsEnforced) {
  testutil::MockService mock;
  mock.delay = 800ms;
  mock.start();
  ServiceClient client(mock.url(), 150ms);
  auto t0 = std::chrono::steady_clock::now();
  EXPECT_THROW(client.post("/v1/logprob", {{"tokens", {"a"}}, {"context", nlohmann::json::array()}}), ServiceError);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 700ms);
}

TEST(ServiceClient, ConcurrencyIsBounded) {
  testutil::MockService mock;
  mock.delay = 30ms;
  mock.start();
  ServiceClient client(mock.url(), 5000ms, 2);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&] { client.post("/v1/paraphrase", {{"a", "x"}, {"b", "y"}}); });
  for (auto &t : threads) t.join();
  EXPECT_EQ(mock.requests.load(), 8);
  EXPECT_LE(mock.max_in_flight.load(), 2);
}
