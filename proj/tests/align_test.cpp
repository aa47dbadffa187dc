#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "plagdet/align.hpp"
#include "plagdet/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace plagdet;

using namespace oracle;

TEST(Align, SeedsEqualExhaustivePairwiseSimilarity) {
  Rng rng(7);
  std::size_t total = 0;
  for (int grid = 0; grid < 200; ++grid) {
    Document src{"s", random_doc(rng, 1 + rng.below(25)), {}};
    Document qry{"q", random_doc(rng, 1 + rng.below(25)), {}};
    auto sn = normalize(src), qn = normalize(qry);
    std::map<std::string, double> idf;
    for (const auto &w : kWords) idf[stem_token(w)] = 0.2 + 3.0 * rng.unit();
    IdfFn fn = [&](std::string_view t) { return idf.at(std::string(t)); };
    double cmin = grid % 2 ? 0.30 : 0.20, dmin = grid % 2 ? 0.33 : 0.20;

    auto sv = tfidf_sentences(sn, fn), qv = tfidf_sentences(qn, fn);
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto &p : seed(sv, qv, cmin, dmin)) got.insert({p.src_sentence, p.qry_sentence});

    DenseOracle so(sn, idf), qo(qn, idf);
    for (std::size_t i = 0; i < so.rows.size(); ++i)
      for (std::size_t j = 0; j < qo.rows.size(); ++j) {
        double c = dense_cos(so.rows[i], qo.rows[j]);
        double d = set_dice(so.rows[i], qo.rows[j]);
        bool want = c >= cmin && d >= dmin;
        bool borderline = std::abs(c - cmin) < 1e-12;
        if (!borderline) {
          ASSERT_EQ(got.count({i, j}) == 1, want) << "grid " << grid << " (" << i << "," << j << ")";
        }
        total += want;
      }
  }
  EXPECT_GT(total, 500u);
}

TEST(Align, ClustersAreGapConnectedComponents) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    std::vector<SeedPair> seeds;
    std::size_t n = rng.below(30);
    for (std::size_t i = 0; i < n; ++i) seeds.push_back({rng.below(60), rng.below(60), 0.5, 0.5});
    std::size_t gap = 1 + rng.below(6);
    auto clusters = cluster_seeds(seeds, gap);
    // BFS components.
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
          auto dist = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
          if (comp[v] < 0 && dist(seeds[u].src_sentence, seeds[v].src_sentence) <= gap &&
              dist(seeds[u].qry_sentence, seeds[v].qry_sentence) <= gap) {
            comp[v] = nc;
            stack.push_back(v);
          }
        }
      }
      ++nc;
    }
    ASSERT_EQ(clusters.size(), static_cast<std::size_t>(nc));
    std::size_t seeds_total = 0;
    for (const auto &c : clusters) {
      seeds_total += c.seed_count;
      EXPECT_LE(c.src_first, c.src_last);
      EXPECT_LE(c.qry_first, c.qry_last);
    }
    EXPECT_EQ(seeds_total, n);
  }
}

TEST(Align, FilteredFragmentsRespectFloorAndDoNotOverlap) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    std::vector<FragmentPair> frags;
    for (std::size_t i = 0, n = rng.below(12); i < n; ++i) {
      FragmentPair f;
      f.qry_span.begin = rng.below(2000);
      f.qry_span.end = f.qry_span.begin + 1 + rng.below(600);
      f.src_span = {0, 10};
      f.src_chars = rng.below(400);
      f.qry_chars = f.qry_span.size();
      f.seed_count = 1 + rng.below(4);
      frags.push_back(f);
    }
    auto out = filter_fragments(frags, 150);
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_GE(out[i].src_chars, 150u);
      EXPECT_GE(out[i].qry_chars, 150u);
      if (i) {
        EXPECT_LE(out[i - 1].qry_span.begin, out[i].qry_span.begin);
        EXPECT_FALSE(out[i - 1].qry_span.overlaps(out[i].qry_span));
      }
    }
  }
}

TEST(Align, ParaphrasedBlockAligns) {
  std::string src_text =
      "The farmer planted wheat in the northern field during a cold spring. Heavy storms flooded the river "
      "valley and damaged the old stone bridge. Villagers repaired the bridge with copper rivets and oak "
      "beams. The market reopened after the harvest festival ended.";
  std::string qry_text =
      "Unrelated opening words about lanterns appear first. The farmer planted wheat in the north field "
      "during a chilly spring. Heavy storms flooded the river valley and harmed the old stone bridge. "
      "Villagers mended the bridge with copper rivets and oak beams.";
  IdfFn idf = [](std::string_view) { return 1.0; };
  auto r = align({"s", src_text, {}}, {"q", qry_text, {}}, {}, idf);
  ASSERT_EQ(r.fragments.size(), 1u);
  EXPECT_EQ(r.setting, AlignSetting::Primary);
  EXPECT_EQ(r.fragments[0].qry_first_sentence, 1u);
  EXPECT_EQ(r.fragments[0].src_first_sentence, 0u);
  EXPECT_GE(r.fragments[0].qry_chars, 150u);
}

TEST(Align, ShortMatchesAreDropped) {
  IdfFn idf = [](std::string_view) { return 1.0; };
  auto r = align({"s", "Copper lanterns glow.", {}}, {"q", "Copper lanterns glow.", {}}, {}, idf);
  EXPECT_TRUE(r.fragments.empty());
}
