#include <gtest/gtest.h>

#include <cmath>

#include "mock_service.hpp"
#include "plagdet/errors.hpp"
#include "plagdet/service_client.hpp"
#include "plagdet/text.hpp"
#include "plagdet/validators.hpp"

using namespace plagdet;
using namespace std::chrono_literals;

namespace {

class FixedScorer final : public ParaphraseScorer {
 public:
  explicit FixedScorer(double s) : s_(s) {}
  double score(std::string_view, std::string_view) const override { return s_; }

 private:
  double s_;
};

FragmentPair whole(const NormalizedDoc &s, const NormalizedDoc &q) {
  FragmentPair f;
  f.src_sentence_count = s.sentences.size();
  f.qry_sentence_count = q.sentences.size();
  f.src_span = {s.sentences.front().span.begin, s.sentences.back().span.end};
  f.qry_span = {q.sentences.front().span.begin, q.sentences.back().span.end};
  return f;
}

}  // namespace

TEST(LexicalScore, HandComputed) {
  // content stems: {cat, chase, small, mous} vs {small, mous, chase, cat, quickli}
  // jaccard 4/5, cosine 4/sqrt(20), order: b positions of a's items 3,2,0,1 -> 5 of 6 discordant
  double want = 0.5 * 0.8 + 0.3 * 4.0 / std::sqrt(20.0) + 0.2 * (1.0 - 5.0 / 6.0);
  EXPECT_NEAR(builtin_paraphrase_score("The cat chased a small mouse.", "A small mouse chased the cat quickly."),
              want, 1e-12);
}

TEST(LexicalScore, IdfWeightsCosineOnly) {
  IdfFn idf = [](std::string_view t) { return t == "quickli" ? 3.0 : 1.0; };
  BuiltinLexicalScorer s(idf);
  double want = 0.5 * 0.8 + 0.3 * 4.0 / std::sqrt(13.0) / 2.0 + 0.2 / 6.0;
  EXPECT_NEAR(s.score("The cat chased a small mouse.", "A small mouse chased the cat quickly."), want, 1e-12);
  auto a = stem_sequence("The cat chased a small mouse."), b = stem_sequence("A small mouse chased the cat quickly.");
  EXPECT_EQ(s.score(("The cat chased a small mouse."), "A small mouse chased the cat quickly."), s.score_stems(a, b));
}

TEST(LexicalScore, Extremes) {
  EXPECT_DOUBLE_EQ(builtin_paraphrase_score("Green tractors plough fields.", "Green tractors plough fields."), 1.0);
  EXPECT_DOUBLE_EQ(builtin_paraphrase_score("Green tractors plough.", "Quiet violins hum."), 0.0);
  EXPECT_DOUBLE_EQ(builtin_paraphrase_score("", "x"), 0.0);
  // all stopwords: falls back to every stem
  EXPECT_DOUBLE_EQ(builtin_paraphrase_score("it is what it is", "it is what it is"), 1.0);
}

TEST(OrderDivergence, Cases) {
  std::vector<std::string> a{"x", "y", "z"}, rev{"z", "y", "x"}, none{"q"}, one{"y"};
  EXPECT_DOUBLE_EQ(order_divergence(a, a), 0.0);
  EXPECT_DOUBLE_EQ(order_divergence(a, rev), 1.0);
  EXPECT_DOUBLE_EQ(order_divergence(a, none), 1.0);
  EXPECT_DOUBLE_EQ(order_divergence(a, one), 0.0);
}

TEST(Band, IsOpen) {
  ValidationBand b;
  EXPECT_FALSE(b.contains(0.5));
  EXPECT_TRUE(b.contains(std::nextafter(0.5, 1.0)));
  EXPECT_TRUE(b.contains(std::nextafter(0.99, 0.0)));
  EXPECT_FALSE(b.contains(0.99));
  EXPECT_FALSE(b.contains(1.0));
}

TEST(Quotes, RegionsAndSentences) {
  std::string t = "He said \"Stop now.\" Then he left. \xE2\x80\x9C" "Curly quote here.\xE2\x80\x9D And more.";
  auto r = quoted_regions(t);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(t.substr(r[0].begin, r[0].size()), "\"Stop now.\"");
  auto sents = split_sentences(t);
  std::vector<bool> quoted;
  for (auto s : sents) quoted.push_back(is_quoted_sentence(t, s, r));
  EXPECT_EQ(quoted, (std::vector<bool>{false, false, true, false}));
  EXPECT_TRUE(quoted_regions("an \"unclosed quote").empty());
}

TEST(Quotes, StripRecomputesSpan) {
  std::string src(400, 'x');
  std::string q = "\"This whole first sentence is a quotation from somewhere else entirely.\" "
                  "The second sentence is ordinary prose that goes on for quite a while to be long enough. "
                  "The third sentence is also ordinary prose with enough characters to matter here.";
  Document qry{"q", q, {}};
  auto nd = normalize(qry);
  ASSERT_EQ(nd.sentences.size(), 3u);
  FragmentPair f;
  f.qry_sentence_count = 3;
  f.qry_span = {0, q.size()};
  f.src_sentence_count = 1;
  auto out = strip_quoted(f, qry, nd, 150);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->qry_first_sentence, 1u);
  EXPECT_EQ(out->qry_sentence_count, 2u);
  EXPECT_EQ(out->qry_span.begin, nd.sentences[1].span.begin);
  EXPECT_EQ(out->qry_chars, utf8_length(q.substr(out->qry_span.begin)));
  EXPECT_FALSE(strip_quoted(f, qry, nd, 400).has_value());
}

TEST(Validate, AcceptsInBandWithEqualEntities) {
  Document s{"s", "Anna sold 40 goats in Lyon. The weather was fine.", {}};
  Document q{"q", "Anna sold the 40 goats in Lyon. Nothing else happened.", {}};
  auto sn = normalize(s), qn = normalize(q);
  BuiltinEntityExtractor ents;
  auto f = whole(sn, qn);
  auto ok = validate(f, s, sn, q, qn, FixedScorer(0.8), ents);
  EXPECT_TRUE(ok.accepted);
  EXPECT_TRUE(ok.entity_match);
  EXPECT_EQ(ok.pairs_scored, 4u);
  ASSERT_TRUE(ok.matched_sentence_pair.has_value());
  EXPECT_EQ(*ok.matched_sentence_pair, (std::pair<std::size_t, std::size_t>{0, 0}));

  EXPECT_FALSE(validate(f, s, sn, q, qn, FixedScorer(0.5), ents).accepted);
  EXPECT_FALSE(validate(f, s, sn, q, qn, FixedScorer(0.99), ents).accepted);
  auto rejected = validate(f, s, sn, q, qn, FixedScorer(0.3), ents);
  EXPECT_FALSE(rejected.accepted);
  EXPECT_DOUBLE_EQ(rejected.best_prob, 0.3);
}

TEST(Validate, EntityMismatchRejects) {
  Document s{"s", "Anna sold 40 goats in Lyon.", {}};
  Document q{"q", "Anna sold 41 goats in Lyon.", {}};
  auto sn = normalize(s), qn = normalize(q);
  auto out = validate(whole(sn, qn), s, sn, q, qn, FixedScorer(0.8), BuiltinEntityExtractor());
  EXPECT_FALSE(out.accepted);
  EXPECT_FALSE(out.entity_match);
}

TEST(External, ScorerAndExtractorUseService) {
  testutil::MockService mock;
  mock.entities = [](const nlohmann::json &j, httplib::Response &res) {
    nlohmann::json e = nlohmann::json::array();
    if (j["text"].get<std::string>().find("Lyon") != std::string::npos) e.push_back({{"kind", "proper"}, {"text", "Lyon"}});
    res.set_content(nlohmann::json{{"entities", e}}.dump(), "application/json");
  };
  mock.start();
  ServiceClient client(mock.url(), 2000ms);
  ExternalParaphraseScorer scorer(client);
  ExternalEntityExtractor extractor(client);
  EXPECT_DOUBLE_EQ(scorer.score("a", "b"), 0.7);
  EXPECT_DOUBLE_EQ(scorer.score("a", "a"), 1.0);
  auto e = extractor.extract("We met in Lyon.");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.begin()->kind, EntityKind::ProperSpan);
  EXPECT_EQ(e.begin()->text, "lyon");
  EXPECT_TRUE(extractor.extract("Nothing.").empty());
}

TEST(External, MalformedResponsesRaise) {
  testutil::MockService mock;
  mock.paraphrase = [](const nlohmann::json &, httplib::Response &res) {
    res.set_content(R"({"score": 1.5})", "application/json");
  };
  mock.entities = [](const nlohmann::json &, httplib::Response &res) {
    res.set_content(R"({"entities":[{"kind":"galaxy","text":"x"}]})", "application/json");
  };
  mock.start();
  ServiceClient client(mock.url(), 2000ms);
  EXPECT_THROW(ExternalParaphraseScorer(client).score("a", "b"), ServiceError);
  EXPECT_THROW(ExternalEntityExtractor(client).extract("a"), ServiceError);
}
