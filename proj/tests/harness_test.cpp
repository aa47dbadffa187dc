#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "plagdet/errors.hpp"
#include "plagdet/harness.hpp"
#include "plagdet/metrics.hpp"
#include "plagdet/synth.hpp"
#include "plagdet/text.hpp"

using namespace plagdet;

namespace {

const Corpus &seed_corpus() {
  static const Corpus c = synthesize_corpus(200, 5);
  return c;
}

const Thesaurus &thesaurus() {
  static const Thesaurus t = Thesaurus::load(Config{}.thesaurus);
  return t;
}

std::vector<double> centrality_oracle(const std::vector<std::string> &sents) {
  const std::size_t n = sents.size();
  std::vector<std::map<std::string, double>> v(n);
  std::map<std::string, double> df;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto &s : stem_sequence(sents[i]))
      if (!is_stopword(s)) v[i][s] += 1;
    for (auto &[w, c] : v[i]) df[w] += 1;
  }
  for (auto &row : v) {
    double norm = 0;
    for (auto &[w, c] : row) {
      c *= std::log((1.0 + static_cast<double>(n)) / (1.0 + df[w])) + 1.0;
      norm += c * c;
    }
    for (auto &[w, c] : row) c /= std::sqrt(norm);
  }
  std::vector<double> cen(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        for (auto &[w, x] : v[i])
          if (v[j].count(w)) cen[i] += x * v[j].at(w);
  return cen;
}

}  // namespace

TEST(Metrics, PrecisionRecallHandComputed) {
  using L = PairLabel;
  std::vector<L> truth{L::Verbatim, L::Verbatim, L::Paraphrase, L::Paraphrase, L::Idea, L::None, L::None};
  std::vector<L> pred{L::Verbatim, L::None, L::Idea, L::Paraphrase, L::Idea, L::Paraphrase, L::None};
  auto m = precision_recall(truth, pred, EvalMode::Multinomial);
  EXPECT_DOUBLE_EQ(m.per_class[L::Verbatim].precision, 1.0);
  EXPECT_DOUBLE_EQ(m.per_class[L::Verbatim].recall, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[L::Paraphrase].precision, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[L::Paraphrase].recall, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[L::Idea].precision, 0.5);
  EXPECT_DOUBLE_EQ(m.per_class[L::Idea].recall, 1.0);
  EXPECT_EQ(m.confusion[2][3], 1u);

  auto b = precision_recall(truth, pred, EvalMode::Binary);
  // None pairs: one detected, one not. Paraphrase pairs: both detected.
  EXPECT_DOUBLE_EQ(b.per_class[L::Paraphrase].precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.per_class[L::Paraphrase].recall, 1.0);
  EXPECT_DOUBLE_EQ(b.per_class[L::Verbatim].recall, 0.5);

  std::vector<L> t2{L::None}, p2{L::None};
  auto d = precision_recall(t2, p2, EvalMode::Multinomial);
  EXPECT_TRUE(d.per_class[L::Idea].precision_degenerate);
  EXPECT_TRUE(d.per_class[L::Idea].recall_degenerate);
  EXPECT_DOUBLE_EQ(d.per_class[L::Idea].precision, 1.0);
  EXPECT_THROW(precision_recall(t2, std::vector<L>{}, EvalMode::Binary), UsageError);
}

TEST(Thesaurus, LoadAndPlurals) {
  std::string path = ::testing::TempDir() + "/thes.txt";
  {
    std::ofstream out(path);
    out << "# comment\nfarm: ranch, estate\nberry: fruit\nfarm: homestead\n";
  }
  auto t = Thesaurus::load(path);
  EXPECT_EQ(t.synonyms("farm"), (std::vector<std::string>{"ranch", "estate", "homestead"}));
  EXPECT_EQ(t.synonyms("farms"), (std::vector<std::string>{"ranches", "estates", "homesteads"}));
  EXPECT_EQ(t.synonyms("berries"), (std::vector<std::string>{"fruits"}));
  EXPECT_TRUE(t.synonyms("cow").empty());
  EXPECT_THROW(Thesaurus::load("/nonexistent/thes.txt"), DataError);
  EXPECT_EQ(pluralize("box"), "boxes");
  EXPECT_EQ(pluralize("city"), "cities");
}

TEST(Obfuscate, RateControlsSubstitutions) {
  Thesaurus t({{"quiet", {"calm"}}, {"river", {"stream"}}, {"stone", {"rock"}}, {"bridge", {"span"}}});
  Rng rng(1);
  std::string s = "The quiet river passed the stone bridge.";
  auto none = obfuscate_sentence(s, t, 0.0, rng, false);
  EXPECT_EQ(none.text, s);
  EXPECT_TRUE(none.edits.empty());
  auto all = obfuscate_sentence(s, t, 1.0, rng, false);
  EXPECT_EQ(all.text, "The calm stream passed the rock span.");
  EXPECT_EQ(all.edits.size(), 4u);
  // 5 content words, rate 0.4 -> 2 substitutions
  auto some = obfuscate_sentence(s, t, 0.4, rng, false);
  EXPECT_EQ(some.edits.size(), 2u);
}

TEST(Obfuscate, ReorderMovesAdjunct) {
  Thesaurus t;
  bool moved = false;
  for (std::uint64_t seed = 0; seed < 20 && !moved; ++seed) {
    Rng rng(seed);
    auto r = obfuscate_sentence("In March, the farmers harvested wheat.", t, 0.0, rng, true);
    if (r.text != "In March, the farmers harvested wheat.") {
      moved = true;
      EXPECT_EQ(r.text, "The farmers harvested wheat in March.");
    }
  }
  EXPECT_TRUE(moved);
}

TEST(Generators, VerbatimExcerpts) {
  auto pairs = gen_verbatim_pairs(seed_corpus(), 30, 500, 11);
  ASSERT_EQ(pairs.size(), 30u);
  for (const auto &p : pairs) {
    EXPECT_EQ(p.label, PairLabel::Verbatim);
    EXPECT_EQ(utf8_length(p.sus.text), 500u);
    EXPECT_NE(p.src.text.find(p.sus.text), std::string::npos);
  }
  EXPECT_THROW(gen_verbatim_pairs(seed_corpus(), 10, 1000000, 1), DataError);
}

TEST(Generators, ParaphraseBlocks) {
  auto pairs = gen_paraphrase_pairs(seed_corpus(), 30, 5, 12, thesaurus(), 0.3);
  for (const auto &p : pairs) {
    EXPECT_EQ(split_sentences(p.sus.text).size(), 5u) << p.sus.text;
    EXPECT_EQ(p.provenance["alignment"].size(), 5u);
    EXPECT_EQ(p.src.text.find(p.sus.text), std::string::npos);
  }
}

TEST(Generators, IdeaSummaries) {
  auto pairs = gen_idea_pairs(seed_corpus(), 30, 13, thesaurus(), 0.15);
  for (const auto &p : pairs) {
    std::size_t n = split_sentences(p.src.text).size();
    EXPECT_EQ(p.provenance["alignment"].size(), (n + 3) / 4);
    std::size_t prev = 0;
    bool first = true;
    for (const auto &a : p.provenance["alignment"]) {
      std::size_t s = a["src_sentence"];
      if (!first) {
        EXPECT_GE(s, prev + 3);
      }
      prev = s;
      first = false;
    }
  }
}

TEST(Generators, CentralSelectionIsOptimal) {
  Rng rng(14);
  const std::vector<std::string> words = {"river", "stone", "wheat", "farmer", "storm", "bridge", "copper"};
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 4 + rng.below(10);
    std::vector<std::string> sents;
    for (std::size_t i = 0; i < n; ++i) {
      std::string s;
      for (std::size_t k = 0, m = 2 + rng.below(4); k < m; ++k) s += words[rng.below(words.size())] + " ";
      sents.push_back(s + "end.");
    }
    std::size_t count = (n + 3) / 4;
    auto cen = centrality_oracle(sents);
    double best = -1;
    std::vector<std::size_t> best_set, cur;
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double sum) {
      if (cur.size() == count) {
        if (sum > best + 1e-12) {
          best = sum;
          best_set = cur;
        }
        return;
      }
      for (std::size_t j = i; j < n; ++j) {
        cur.push_back(j);
        rec(j + 3, sum + cen[j]);
        cur.pop_back();
      }
    };
    rec(0, 0.0);
    auto got = select_central_sentences(sents, count, 3);
    double got_sum = 0;
    for (auto i : got) got_sum += cen[i];
    EXPECT_NEAR(got_sum, best, 1e-9);
    EXPECT_EQ(got, best_set);
  }
}

TEST(Generators, NegativesAreDissimilar) {
  auto pairs = gen_negative_pairs(seed_corpus(), 40, 15, 0.2);
  for (const auto &p : pairs) {
    EXPECT_LT(p.provenance["cosine"].get<double>(), 0.2);
    EXPECT_NE(p.src.text, p.sus.text);
  }
}

TEST(Generators, EvalSplitAndDeterminism) {
  Config cfg;
  auto a = generate_eval_pairs(seed_corpus(), 42, cfg);
  auto b = generate_eval_pairs(seed_corpus(), 42, cfg);
  std::map<PairLabel, std::size_t> counts;
  for (const auto &p : a) ++counts[p.label];
  EXPECT_EQ(counts[PairLabel::None], 11u);
  EXPECT_EQ(counts[PairLabel::Verbatim], 11u);
  EXPECT_EQ(counts[PairLabel::Paraphrase], 10u);
  EXPECT_EQ(counts[PairLabel::Idea], 10u);
  std::ostringstream sa, sb;
  write_pairs(sa, a);
  write_pairs(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Pairs, WriteReadRoundTrip) {
  Config cfg;
  auto pairs = generate_eval_pairs(seed_corpus(), 16, cfg);
  std::stringstream ss;
  write_pairs(ss, pairs);
  auto back = read_pairs(ss, pairs_corpus(pairs));
  ASSERT_EQ(back.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(back[i].sus.text, pairs[i].sus.text);
    EXPECT_EQ(back[i].src.id, pairs[i].src.id);
    EXPECT_EQ(back[i].label, pairs[i].label);
  }
  std::stringstream bad("{\"src_id\":\"nope\",\"sus_id\":\"x\",\"label\":\"none\"}\n");
  EXPECT_THROW(read_pairs(bad, pairs_corpus(pairs)), DataError);
}

TEST(Evaluate, PipelineOnSmallSet) {
  Config cfg;
  cfg.workers = 2;
  auto pairs = generate_eval_pairs(seed_corpus(), 40, cfg);
  auto r = evaluate_both(pairs, PipelineDetector(cfg));
  EXPECT_EQ(r.pairs, 40u);
  EXPECT_GE(r.multinomial.per_class[PairLabel::Verbatim].recall, 0.85);
  auto j = to_json(r, pairs);
  EXPECT_TRUE(j.contains("binary"));
  EXPECT_EQ(j["predictions"].size(), 40u);
}
