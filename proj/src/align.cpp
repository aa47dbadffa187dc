#include "plagdet/align.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "plagdet/text.hpp"

namespace plagdet {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

FragmentPair make_fragment(const SeedCluster &c, const Document &src, const NormalizedDoc &src_nd,
                           const Document &qry, const NormalizedDoc &qry_nd) {
  FragmentPair f;
  f.src_first_sentence = c.src_first;
  f.src_sentence_count = c.src_last - c.src_first + 1;
  f.qry_first_sentence = c.qry_first;
  f.qry_sentence_count = c.qry_last - c.qry_first + 1;
  f.seed_count = c.seed_count;
  f.src_span = {src_nd.sentences[c.src_first].span.begin, src_nd.sentences[c.src_last].span.end};
  f.qry_span = {qry_nd.sentences[c.qry_first].span.begin, qry_nd.sentences[c.qry_last].span.end};
  f.src_chars = utf8_length(std::string_view(src.text).substr(f.src_span.begin, f.src_span.size()));
  f.qry_chars = utf8_length(std::string_view(qry.text).substr(f.qry_span.begin, f.qry_span.size()));
  return f;
}

}  // namespace

std::string_view to_string(AlignSetting s) { return s == AlignSetting::Primary ? "primary" : "summary"; }

std::vector<SentenceVector> tfidf_sentences(const NormalizedDoc &doc, const IdfFn &idf) {
  std::vector<SentenceVector> out;
  out.reserve(doc.sentences.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence &sent = doc.sentences[s];
    std::map<std::string_view, double> tf;
    for (std::size_t t = sent.first_token; t < sent.end_token; ++t) {
      const std::string &stem = doc.tokens[t].stem;
      if (!is_stopword(stem)) tf[stem] += 1.0;
    }
    SentenceVector v;
    v.sentence_index = s;
    v.weights.reserve(tf.size());
    for (const auto &[term, count] : tf) {
      double w = count * idf(term);
      v.weights.emplace_back(std::string(term), w);
      v.norm_sq += w * w;
    }
    out.push_back(std::move(v));
  }
  return out;
}

double cosine(const SentenceVector &a, const SentenceVector &b) {
  if (a.norm_sq <= 0.0 || b.norm_sq <= 0.0) return 0.0;
  double dot = 0.0;
  auto i = a.weights.begin(), j = b.weights.begin();
  while (i != a.weights.end() && j != b.weights.end()) {
    int c = i->first.compare(j->first);
    if (c == 0) {
      dot += i->second * j->second;
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return std::clamp(dot / std::sqrt(a.norm_sq * b.norm_sq), 0.0, 1.0);
}

double dice(const SentenceVector &a, const SentenceVector &b) {
  std::size_t total = a.weights.size() + b.weights.size();
  if (total == 0) return 0.0;
  std::size_t common = 0;
  auto i = a.weights.begin(), j = b.weights.begin();
  while (i != a.weights.end() && j != b.weights.end()) {
    int c = i->first.compare(j->first);
    if (c == 0) {
      ++common;
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(total);
}

std::vector<SeedPair> seed(std::span<const SentenceVector> src, std::span<const SentenceVector> qry,
                           double cos_min, double dice_min) {
  std::vector<SeedPair> seeds;
  for (const auto &s : src) {
    for (const auto &q : qry) {
      double d = dice(s, q);
      if (d < dice_min) continue;
      double c = cosine(s, q);
      if (c < cos_min) continue;
      seeds.push_back({s.sentence_index, q.sentence_index, c, d});
    }
  }
  return seeds;
}

std::vector<SeedCluster> cluster_seeds(std::span<const SeedPair> seeds, std::size_t max_gap) {
  DisjointSets sets(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j)
      if (gap(seeds[i].src_sentence, seeds[j].src_sentence) <= max_gap &&
          gap(seeds[i].qry_sentence, seeds[j].qry_sentence) <= max_gap)
        sets.unite(i, j);

  std::map<std::size_t, SeedCluster> by_root;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const SeedPair &s = seeds[i];
    auto [it, fresh] = by_root.try_emplace(sets.find(i));
    SeedCluster &c = it->second;
    if (fresh) {
      c = {s.src_sentence, s.src_sentence, s.qry_sentence, s.qry_sentence, 0};
    } else {
      c.src_first = std::min(c.src_first, s.src_sentence);
      c.src_last = std::max(c.src_last, s.src_sentence);
      c.qry_first = std::min(c.qry_first, s.qry_sentence);
      c.qry_last = std::max(c.qry_last, s.qry_sentence);
    }
    ++c.seed_count;
  }
  std::vector<SeedCluster> out;
  for (auto &[root, c] : by_root) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const SeedCluster &a, const SeedCluster &b) {
    return std::tie(a.qry_first, a.src_first, a.qry_last, a.src_last) <
           std::tie(b.qry_first, b.src_first, b.qry_last, b.src_last);
  });
  return out;
}

std::vector<FragmentPair> extend(std::span<const SeedPair> seeds, std::size_t max_gap,
                                 const Document &src, const NormalizedDoc &src_nd,
                                 const Document &qry, const NormalizedDoc &qry_nd) {
  std::vector<FragmentPair> out;
  for (const auto &c : cluster_seeds(seeds, max_gap))
    out.push_back(make_fragment(c, src, src_nd, qry, qry_nd));
  return out;
}

std::vector<FragmentPair> filter_fragments(std::vector<FragmentPair> fragments, std::size_t min_chars) {
  std::erase_if(fragments, [&](const FragmentPair &f) {
    return f.src_chars < min_chars || f.qry_chars < min_chars;
  });
  std::sort(fragments.begin(), fragments.end(), [](const FragmentPair &a, const FragmentPair &b) {
    if (a.seed_count != b.seed_count) return a.seed_count > b.seed_count;
    if (a.qry_span.size() != b.qry_span.size()) return a.qry_span.size() > b.qry_span.size();
    if (a.qry_span.begin != b.qry_span.begin) return a.qry_span.begin < b.qry_span.begin;
    return a.src_span.begin < b.src_span.begin;
  });
  std::vector<FragmentPair> kept;
  for (auto &f : fragments) {
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const FragmentPair &k) { return k.qry_span.overlaps(f.qry_span); });
    if (!clash) kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end(), [](const FragmentPair &a, const FragmentPair &b) {
    return a.qry_span.begin < b.qry_span.begin;
  });
  return kept;
}

AlignResult align(const Document &src, const NormalizedDoc &src_nd, const Document &qry,
                  const NormalizedDoc &qry_nd, const AlignParams &params, const IdfFn &idf) {
  auto sv = tfidf_sentences(src_nd, idf);
  auto qv = tfidf_sentences(qry_nd, idf);
  auto run = [&](const SeedThresholds &t) {
    auto seeds = seed(sv, qv, t.cos_min, t.dice_min);
    return filter_fragments(extend(seeds, t.max_gap, src, src_nd, qry, qry_nd), params.min_fragment_chars);
  };
  AlignResult result;
  result.fragments = run(params.primary);
  if (result.fragments.empty()) {
    result.fragments = run(params.summary);
    result.setting = AlignSetting::Summary;
  }
  return result;
}

AlignResult align(const Document &src, const Document &qry, const AlignParams &params,
                  const IdfFn &idf) {
  return align(src, normalize(src), qry, normalize(qry), params, idf);
}

}  // namespace plagdet
