#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "plagdet/corpus.hpp"
#include "plagdet/document.hpp"

namespace plagdet {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct ScoredCandidate {
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const ScoredCandidate &, const ScoredCandidate &) = default;
};

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;

  friend bool operator==(const Posting &, const Posting &) = default;
};

// Non-negative BM25 idf: ln(1 + (N - df + 0.5) / (df + 0.5)).
double bm25_idf(std::size_t doc_count, std::size_t df);

// Immutable inverted index over the stems of a corpus. Term ids are the
// positions of terms in lexicographic order, so the layout does not depend
// on ingestion parallelism.
class Index {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  // Normalizes documents on up to `workers` threads; the merge is ordered.
  static Index build(const Corpus &corpus, unsigned workers = 1);

  std::size_t doc_count() const { return doc_ids_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }

  const std::string &doc_id(std::size_t doc) const { return doc_ids_[doc]; }
  std::optional<std::size_t> doc_index(std::string_view id) const;
  std::size_t doc_length(std::size_t doc) const { return doc_lengths_[doc]; }
  std::span<const std::uint32_t> doc_terms(std::size_t doc) const { return doc_terms_[doc]; }

  const std::string &term(std::uint32_t id) const { return terms_[id]; }
  std::optional<std::uint32_t> term_id(std::string_view term) const;
  std::span<const Posting> postings(std::uint32_t term) const { return postings_[term]; }
  std::size_t document_frequency(std::string_view term) const;

  // idf of a term; terms absent from the corpus get the df = 0 value.
  double idf(std::string_view term) const;

  // BM25 of a stemmed query multiset against one document. Per-term
  // contributions are summed in lexicographic term order. Throws
  // UsageError for an unknown doc id.
  double bm25_score(std::span<const std::string> query_terms, std::string_view doc_id,
                    const Bm25Params &params = {}) const;

  // Top-n' documents with positive BM25 score against the full normalized
  // query, ordered by score descending then doc id ascending. Documents whose
  // raw text equals the query text are promoted to the front. Throws
  // UsageError if the query has no tokens.
  std::vector<ScoredCandidate> retrieve(const Document &query, std::size_t n_prime = 10,
                                        const Bm25Params &params = {}) const;
  std::vector<ScoredCandidate> retrieve_terms(std::span<const std::string> query_terms,
                                              std::size_t n_prime = 10,
                                              const Bm25Params &params = {}) const;

  // Number of documents containing the snippet's stems as a contiguous
  // subsequence, truncated at cap.
  std::size_t count_occurrences(std::string_view snippet, std::size_t cap = 10000) const;

  void save(std::ostream &out) const;
  static Index load(std::istream &in);

  friend bool operator==(const Index &, const Index &);

 private:
  void finalize();
  std::vector<double> all_scores(std::span<const std::string> query_terms,
                                 const Bm25Params &params) const;

  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::size_t> doc_by_id_;
  std::vector<std::uint32_t> doc_lengths_;
  std::vector<std::uint64_t> text_hashes_;
  std::vector<std::vector<std::uint32_t>> doc_terms_;
  double avg_doc_length_ = 0.0;
};

std::uint64_t text_hash(std::string_view text);

}  // namespace plagdet
