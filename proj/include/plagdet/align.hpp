#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plagdet/document.hpp"

namespace plagdet {

using IdfFn = std::function<double(std::string_view)>;

// tf-idf weights of one sentence's non-stopword stems, sorted by stem.
struct SentenceVector {
  std::size_t sentence_index = 0;
  std::vector<std::pair<std::string, double>> weights;
  double norm_sq = 0.0;
};

struct SeedPair {
  std::size_t src_sentence = 0;
  std::size_t qry_sentence = 0;
  double cosine = 0.0;
  double dice = 0.0;
};

struct FragmentPair {
  CharSpan src_span;
  CharSpan qry_span;
  std::size_t src_first_sentence = 0;
  std::size_t src_sentence_count = 0;
  std::size_t qry_first_sentence = 0;
  std::size_t qry_sentence_count = 0;
  std::size_t seed_count = 0;
  // Code points per side. The query side counts only sentences that remain
  // after quote stripping.
  std::size_t src_chars = 0;
  std::size_t qry_chars = 0;
  // Query sentences excluded as quotations (absolute indices).
  std::vector<std::size_t> qry_excluded;
};

struct SeedThresholds {
  double cos_min = 0.30;
  double dice_min = 0.33;
  std::size_t max_gap = 4;
};

struct AlignParams {
  SeedThresholds primary{0.30, 0.33, 4};
  SeedThresholds summary{0.20, 0.20, 24};
  std::size_t min_fragment_chars = 150;
};

enum class AlignSetting { Primary, Summary };
std::string_view to_string(AlignSetting s);

struct AlignResult {
  std::vector<FragmentPair> fragments;
  AlignSetting setting = AlignSetting::Primary;
};

std::vector<SentenceVector> tfidf_sentences(const NormalizedDoc &doc, const IdfFn &idf);

double cosine(const SentenceVector &a, const SentenceVector &b);
// Dice coefficient over the stem sets: 2|A n B| / (|A| + |B|).
double dice(const SentenceVector &a, const SentenceVector &b);

// Every (i, j) meeting both thresholds, in (src, qry) order.
std::vector<SeedPair> seed(std::span<const SentenceVector> src, std::span<const SentenceVector> qry,
                           double cos_min, double dice_min);

// Connected components of seeds under the relation "both sentence indices
// differ by at most max_gap"; each component spans its min..max sentences.
struct SeedCluster {
  std::size_t src_first = 0, src_last = 0;
  std::size_t qry_first = 0, qry_last = 0;
  std::size_t seed_count = 0;
};
std::vector<SeedCluster> cluster_seeds(std::span<const SeedPair> seeds, std::size_t max_gap);

std::vector<FragmentPair> extend(std::span<const SeedPair> seeds, std::size_t max_gap,
                                 const Document &src, const NormalizedDoc &src_nd,
                                 const Document &qry, const NormalizedDoc &qry_nd);

// Drops fragments with either side under min_chars, then resolves query-side
// overlaps preferring more seeds, then the longer query span, then the
// earlier query start. Output is sorted by query start.
std::vector<FragmentPair> filter_fragments(std::vector<FragmentPair> fragments,
                                           std::size_t min_chars = 150);

// Seed, extend, filter under the primary thresholds; if nothing survives,
// rerun once under the summary thresholds.
AlignResult align(const Document &src, const NormalizedDoc &src_nd, const Document &qry,
                  const NormalizedDoc &qry_nd, const AlignParams &params, const IdfFn &idf);
AlignResult align(const Document &src, const Document &qry, const AlignParams &params,
                  const IdfFn &idf);

}  // namespace plagdet
