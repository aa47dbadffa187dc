#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "mock_service.hpp"
#include "plagdet/errors.hpp"
#include "plagdet/metrics.hpp"
#include "plagdet/service_client.hpp"
#include "plagdet/synth.hpp"
#include "plagdet/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace plagdet;

using namespace oracle;

TEST(Perplexity, UniformProviderGivesVocabularySize) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::size_t v = 2 + rng.below(50000);
    UniformProvider u(v);
    auto toks = random_tokens(rng, 1 + rng.below(3000), 100);
    std::size_t window = 1 + rng.below(600), stride = 1 + rng.below(window);
    double pp = perplexity(toks, u, window, stride).value;
    ASSERT_NEAR(pp / static_cast<double>(v), 1.0, 1e-9) << "V=" << v;
  }
}

TEST(Perplexity, OrderOneIsStrideInvariant) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<std::string>> docs{random_tokens(rng, 200 + rng.below(500), 60)};
    NgramLm lm = NgramLm::train(docs, 1, 0.1);
    auto toks = random_tokens(rng, 10 + rng.below(2000), 80);
    double base = perplexity(toks, lm, 512, 512).value;
    for (std::size_t stride : {1, 3, 64, 256, 511}) {
      double pp = perplexity(toks, lm, 512, stride).value;
      ASSERT_NEAR(pp / base, 1.0, 1e-9) << "stride " << stride;
    }
  }
}

TEST(Perplexity, MatchesDirectStridedSum) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::vector<std::string>> docs{random_tokens(rng, 400, 30)};
    NgramLm lm = NgramLm::train(docs, 3, 0.1);
    auto toks = random_tokens(rng, 1 + rng.below(300), 35);
    std::size_t window = 1 + rng.below(40), stride = 1 + rng.below(window);
    double want = std::exp(strided_nll(toks, lm, window, stride) / static_cast<double>(toks.size()));
    EXPECT_NEAR(perplexity(toks, lm, window, stride).value / want, 1.0, 1e-12);
  }
}

TEST(Perplexity, RejectsBadArguments) {
  UniformProvider u(10);
  std::vector<std::string> none, one{"a"};
  EXPECT_THROW(perplexity(none, u, 5, 5), UsageError);
  EXPECT_THROW(perplexity(one, u, 5, 6), UsageError);
  EXPECT_THROW(perplexity(one, u, 0, 0), UsageError);
  EXPECT_THROW(UniformProvider(0), UsageError);
}

TEST(NgramLm, MatchesCountFormula) {
  std::vector<std::vector<std::string>> docs{{"a", "b", "a", "b", "c"}, {"b", "c", "c"}};
  NgramLm lm = NgramLm::train(docs, 2, 0.5);
  EXPECT_EQ(lm.vocab_size(), 4u);  // a b c <unk>
  const double V = 4, k = 0.5;
  // unigram: c(b) = 3 of 8 tokens; bigram (a, b): 2 of c(a) = 2
  std::vector<std::string> ctx{"a"};
  double want = ((3 + k) / (8 + k * V) + (2 + k) / (2 + k * V)) / 2;
  EXPECT_NEAR(lm.prob("b", ctx), want, 1e-15);
  // no context: unigram only
  EXPECT_NEAR(lm.prob("c", {}), (3 + k) / (8 + k * V), 1e-15);
  // unknown words map to <unk>
  std::vector<std::string> zctx{"zzz"};
  EXPECT_NEAR(lm.prob("qqq", zctx), (k / (8 + k * V) + k / (0 + k * V)) / 2, 1e-15);
}

TEST(NgramLm, DistributionsSumToOne) {
  Rng rng(4);
  std::vector<std::vector<std::string>> docs{random_tokens(rng, 500, 20), random_tokens(rng, 100, 25)};
  NgramLm lm = NgramLm::train(docs, 3, 0.1);
  for (int t = 0; t < 20; ++t) {
    auto ctx = random_tokens(rng, rng.below(4), 25);
    double sum = 0;
    for (const auto &w : lm.vocabulary()) sum += lm.prob(w, ctx);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Corpora, TokenStreamAndCorpusPerplexity) {
  Corpus c;
  c.add({"a", "One two.", {}});
  c.add({"b", "Three.", {}});
  EXPECT_EQ(corpus_token_stream(c), (std::vector<std::string>{"one", "two", "<nl>", "three"}));
  UniformProvider u(7);
  EXPECT_NEAR(corpus_perplexity(c, u).value, 7.0, 1e-12);
  auto per = per_doc_perplexity(c, u, 50, 50, 2);
  EXPECT_NEAR(per.at("b"), 7.0, 1e-12);
}

TEST(Filter, LowPerplexityRemovesFloorFraction) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    Corpus c;
    std::map<std::string, double> scores;
    std::size_t n = 1 + rng.below(200);
    for (std::size_t i = 0; i < n; ++i) {
      std::string id = "d" + std::to_string(i);
      c.add({id, "x", {}});
      scores[id] = static_cast<double>(rng.below(20));
    }
    auto r = filter_low_perplexity(c, scores, 0.30);
    ASSERT_EQ(r.removed_ids.size(), static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(n))));
    EXPECT_EQ(r.kept.size() + r.removed_ids.size(), n);
    double max_removed = -1, min_kept = 1e9;
    for (auto &id : r.removed_ids) max_removed = std::max(max_removed, scores[id]);
    for (auto &d : r.kept) min_kept = std::min(min_kept, scores[d.id]);
    if (!r.removed_ids.empty() && !r.kept.empty()) {
      EXPECT_LE(max_removed, min_kept);
    }
  }
}

TEST(Filter, NearDuplicatesLeaveNoPairAboveThreshold) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Corpus base = synthesize_corpus(100, 100 + t);
    Corpus c;
    for (const auto &d : base) c.add(d);
    // add altered copies
    for (std::size_t i = 0; i < 100; ++i) {
      const auto &d = base[rng.below(base.size())];
      c.add({"copy" + std::to_string(i), d.text + (rng.chance(0.5) ? " Extra tail words here." : ""), {}});
    }
    TfidfMatrix m(c);
    auto r = filter_near_duplicates(c, 0.8);
    std::set<std::string> kept;
    for (auto &d : r.kept) kept.insert(d.id);
    EXPECT_LT(kept.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (kept.count(c[i].id) && kept.count(c[j].id)) {
          ASSERT_LE(m.cosine(i, j), 0.8);
        }
  }
}

TEST(Similarity, TfidfCosineMatchesDenseComputation) {
  Corpus c = synthesize_corpus(30, 8);
  TfidfMatrix m(c);
  std::vector<std::map<std::string, double>> tf(c.size());
  std::map<std::string, double> df;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (auto &t : tokenize(c[i].text))
      if (!is_stopword(t.text)) tf[i][t.text] += 1;
    for (auto &[w, n] : tf[i]) df[w] += 1;
  }
  auto vec = [&](std::size_t i) {
    std::map<std::string, double> v;
    for (auto &[w, n] : tf[i]) v[w] = n * (std::log((1.0 + 30) / (1.0 + df[w])) + 1);
    return v;
  };
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) {
      auto a = vec(i), b = vec(j);
      double dot = 0, na = 0, nb = 0;
      for (auto &[w, x] : a) {
        na += x * x;
        if (b.count(w)) dot += x * b[w];
      }
      for (auto &[w, y] : b) nb += y * y;
      EXPECT_NEAR(m.cosine(i, j), dot / std::sqrt(na * nb), 1e-12);
    }
}

TEST(Similarity, SummaryCountsAndSampling) {
  Corpus c = synthesize_corpus(40, 9);
  auto full = intra_similarity(c, 100, 10, 1, {0.0, 0.8}, 2);
  EXPECT_FALSE(full.sampled);
  EXPECT_EQ(full.pairs_evaluated, 40u * 39u / 2u);
  EXPECT_GT(full.mean_cosine, 0.0);
  auto sampled = intra_similarity(c, 10, 500, 1);
  EXPECT_TRUE(sampled.sampled);
  EXPECT_EQ(sampled.pairs_evaluated, 500u);
  auto again = intra_similarity(c, 10, 500, 1);
  EXPECT_EQ(sampled.mean_cosine, again.mean_cosine);
}

TEST(ChiSquared, ClosedFormOnRandomTables) {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    double a = 1 + static_cast<double>(rng.below(5000)), b = 1 + static_cast<double>(rng.below(5000));
    double c = 1 + static_cast<double>(rng.below(5000)), d = 1 + static_cast<double>(rng.below(5000));
    double n = a + b + c + d;
    double want = n * (a * d - b * c) * (a * d - b * c) / ((a + b) * (c + d) * (a + c) * (b + d));
    auto r = chi_squared_test(a, b, c, d);
    if (want == 0) {
      ASSERT_EQ(r.statistic, 0.0);
    } else {
      ASSERT_NEAR(r.statistic / want, 1.0, 1e-9);
    }
    ASSERT_NEAR(r.p, chi2_sf_oracle(want), 1e-9);
  }
}

TEST(ChiSquared, ZeroStatisticAndMonotone) {
  auto r = chi_squared_test(10, 20, 20, 40);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p, 1.0);
  double prev = 1.0;
  for (double x = 0.1; x < 30; x += 0.1) {
    double p = chi_squared_sf_1(x);
    EXPECT_LT(p, prev);
    prev = p;
  }
  EXPECT_NEAR(chi_squared_sf_1(3.841458820694124), 0.05, 1e-12);
  EXPECT_THROW(chi_squared_test(0, 0, 1, 1), UsageError);
  EXPECT_THROW(chi_squared_test(-1, 2, 1, 1), UsageError);
}

TEST(External, LikelihoodProviderUsesService) {
  testutil::MockService mock;
  std::vector<nlohmann::json> bodies;
  std::mutex mu;
  mock.logprob = [&](const nlohmann::json &j, httplib::Response &res) {
    std::lock_guard lock(mu);
    bodies.push_back(j);
    res.set_content(R"({"logp": -1.5})", "application/json");
  };
  mock.start();
  ServiceClient client(mock.url(), std::chrono::milliseconds(2000));
  ExternalLikelihoodProvider p(client, 100);
  std::vector<std::string> toks{"a", "b", "c"};
  EXPECT_NEAR(perplexity(toks, p, 2, 1).value, std::exp(1.5), 1e-12);
  ASSERT_EQ(bodies.size(), 3u);
  EXPECT_EQ(bodies[2]["context"], nlohmann::json({"b"}));
  EXPECT_EQ(bodies[2]["tokens"], nlohmann::json({"c"}));

  mock.logprob = [](const nlohmann::json &, httplib::Response &res) {
    res.set_content(R"({"logp": 0.5})", "application/json");
  };
  EXPECT_THROW(p.log_prob("a", {}), ServiceError);
}
