#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "plagdet/corpus.hpp"

namespace plagdet {

class ServiceClient;

inline constexpr std::string_view kNewlineToken = "<nl>";
inline constexpr std::string_view kUnknownToken = "<unk>";

class LikelihoodProvider {
 public:
  virtual ~LikelihoodProvider() = default;
  // Natural-log probability of token given the preceding tokens.
  virtual double log_prob(std::string_view token, std::span<const std::string> context) const = 0;
  virtual std::size_t vocab_size() const = 0;
};

class UniformProvider final : public LikelihoodProvider {
 public:
  explicit UniformProvider(std::size_t vocab_size);
  double log_prob(std::string_view, std::span<const std::string>) const override { return log_p_; }
  std::size_t vocab_size() const override { return v_; }

 private:
  std::size_t v_;
  double log_p_;
};

// Interpolated add-k n-gram model. Orders 1..n are mixed with equal weight;
// orders whose history is longer than the available context are left out.
// P_j(w | h) = (c(h, w) + k) / (c(h) + k V) with c(h) = sum over w of c(h, w).
class NgramLm final : public LikelihoodProvider {
 public:
  static NgramLm train(std::span<const std::vector<std::string>> documents, std::size_t order = 3,
                       double add_k = 0.1);
  // Documents tokenized and joined with newline tokens.
  static NgramLm train(const Corpus &corpus, std::size_t order = 3, double add_k = 0.1);

  double log_prob(std::string_view token, std::span<const std::string> context) const override;
  double prob(std::string_view token, std::span<const std::string> context) const;
  std::size_t vocab_size() const override { return vocab_.size(); }
  std::size_t order() const { return order_; }
  const std::vector<std::string> &vocabulary() const { return vocab_; }

 private:
  std::uint32_t id_of(std::string_view token) const;

  std::size_t order_ = 3;
  double k_ = 0.1;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::uint32_t unk_ = 0;
  // key: packed ids of (history, word) or history alone
  std::unordered_map<std::string, std::uint64_t> ngram_counts_;
  std::unordered_map<std::string, std::uint64_t> history_counts_;
};

inline NgramLm train_builtin_lm(const Corpus &corpus, std::size_t order = 3, double add_k = 0.1) {
  return NgramLm::train(corpus, order, add_k);
}

// POST /v1/logprob {"tokens": [token], "context": [...]} -> {"logp"}.
class ExternalLikelihoodProvider final : public LikelihoodProvider {
 public:
  ExternalLikelihoodProvider(const ServiceClient &client, std::size_t vocab_size)
      : client_(client), vocab_size_(vocab_size) {}
  double log_prob(std::string_view token, std::span<const std::string> context) const override;
  std::size_t vocab_size() const override { return vocab_size_; }

 private:
  const ServiceClient &client_;
  std::size_t vocab_size_;
};

// Lowercased surface tokens.
std::vector<std::string> lm_tokens(std::string_view text);
// All documents' tokens with a newline token between consecutive documents.
std::vector<std::string> corpus_token_stream(const Corpus &corpus);

struct PerplexityResult {
  double value = 1.0;
  std::size_t token_count = 0;
  std::size_t window = 0;
  std::size_t stride = 0;
};

// Strided sliding window: windows start at multiples of stride, each scores
// the tokens not covered by the previous window, conditioned on everything
// from the window start. Throws UsageError on empty text or bad window.
PerplexityResult perplexity(std::span<const std::string> tokens, const LikelihoodProvider &provider,
                            std::size_t window, std::size_t stride);

PerplexityResult corpus_perplexity(const Corpus &corpus, const LikelihoodProvider &provider,
                                   std::size_t window = 512, std::size_t stride = 512);

std::map<std::string, double> per_doc_perplexity(const Corpus &corpus, const LikelihoodProvider &provider,
                                                 std::size_t window = 50, std::size_t stride = 50,
                                                 unsigned workers = 1);

struct FilterResult {
  Corpus kept;
  std::vector<std::string> removed_ids;
};

// Removes the floor(fraction * N) lowest scores; ties by ascending id.
FilterResult filter_low_perplexity(const Corpus &corpus, const std::map<std::string, double> &scores,
                                   double fraction = 0.30);

// L2-normalized tf-idf vectors over non-stopword surface tokens, with
// idf = ln((1 + N) / (1 + df)) + 1.
class TfidfMatrix {
 public:
  explicit TfidfMatrix(const Corpus &corpus);
  std::size_t size() const { return rows_.size(); }
  double cosine(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows_;
};

struct SimilarityMatrixSummary {
  double mean_cosine = 0.0;
  std::map<double, std::size_t> pairs_above;
  std::size_t pairs_evaluated = 0;
  bool sampled = false;
};

SimilarityMatrixSummary intra_similarity(const Corpus &corpus, std::size_t sample_cap = 2000,
                                         std::size_t sample_pairs = 200000, std::uint64_t seed = 42,
                                         std::vector<double> thresholds = {0.8}, unsigned workers = 1);

// Greedy pass in ascending id order: a document is dropped when its cosine
// with an already kept document exceeds threshold.
FilterResult filter_near_duplicates(const Corpus &corpus, double threshold = 0.8);

struct ChiSquaredResult {
  double statistic = 0.0;
  double p = 1.0;
};

// Upper tail of the chi-squared distribution with one degree of freedom:
// erfc(sqrt(x / 2)).
double chi_squared_sf_1(double x);

// Pearson test on the 2x2 table [[a, b], [c, d]] without continuity
// correction. Throws UsageError on a zero margin.
ChiSquaredResult chi_squared_test(double a, double b, double c, double d);

}  // namespace plagdet
