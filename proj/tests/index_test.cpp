#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "plagdet/errors.hpp"
#include "plagdet/index.hpp"
#include "plagdet/synth.hpp"
#include "plagdet/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace plagdet;

using namespace oracle;

TEST(Index, TopNEqualsExhaustiveScoring) {
  Rng rng(5);
  for (int round = 0; round < 2; ++round) {
    Corpus c = random_corpus(rng, 1000);
    Index idx = Index::build(c, 2);
    Bm25Oracle oracle(c);
    for (int q = 0; q < 50; ++q) {
      auto terms = stem_sequence(testutil::random_words(rng, 1 + rng.below(12), 150));
      auto got = idx.retrieve_terms(terms, 10);
      auto want = oracle.top(terms, 10);
      ASSERT_EQ(got, want) << "round " << round << " query " << q;
    }
  }
}

TEST(Index, ExactCopyPromotedFirst) {
  Corpus c;
  c.add({"a", "apple apple apple banana", {}});
  c.add({"b", "apple banana cherry", {}});
  c.add({"c", "cherry date", {}});
  Index idx = Index::build(c);
  auto r = idx.retrieve({"q", "apple banana cherry", {}}, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].doc_id, "b");
  EXPECT_THROW(idx.retrieve({"q", "... !!", {}}), UsageError);
  EXPECT_THROW(idx.retrieve_terms(std::vector<std::string>{"x"}, 0), UsageError);
}

TEST(Index, BuildIsIndependentOfWorkers) {
  Corpus c = synthesize_corpus(60, 3);
  EXPECT_TRUE(Index::build(c, 1) == Index::build(c, 4));
}

TEST(Index, SaveLoadRoundTrip) {
  Corpus c = synthesize_corpus(40, 9);
  Index idx = Index::build(c);
  std::stringstream ss;
  idx.save(ss);
  Index back = Index::load(ss);
  EXPECT_TRUE(idx == back);
  auto q = stem_sequence(c[3].text);
  EXPECT_EQ(idx.retrieve_terms(q, 5), back.retrieve_terms(q, 5));
}

TEST(Index, LoadRejectsGarbage) {
  std::stringstream bad("not an index at all");
  EXPECT_THROW(Index::load(bad), DataError);
  Corpus c = synthesize_corpus(5, 1);
  std::stringstream ss;
  Index::build(c).save(ss);
  std::string bytes = ss.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(Index::load(truncated), DataError);
}

TEST(Index, StatisticsAndOccurrences) {
  Corpus c;
  c.add({"a", "the red fox jumps", {}});
  c.add({"b", "a red fox sleeps", {}});
  c.add({"c", "fox red", {}});
  Index idx = Index::build(c);
  EXPECT_EQ(idx.doc_count(), 3u);
  EXPECT_EQ(idx.document_frequency("fox"), 3u);
  EXPECT_EQ(idx.document_frequency("zebra"), 0u);
  EXPECT_DOUBLE_EQ(idx.idf("fox"), std::log(1.0 + 0.5 / 3.5));
  EXPECT_DOUBLE_EQ(idx.idf("zebra"), std::log(1.0 + 3.5 / 0.5));
  EXPECT_EQ(idx.count_occurrences("red fox"), 2u);
  EXPECT_EQ(idx.count_occurrences("red fox", 1), 1u);
  EXPECT_EQ(idx.count_occurrences("purple"), 0u);
  EXPECT_THROW(idx.bm25_score(std::vector<std::string>{"fox"}, "nope"), UsageError);
}
