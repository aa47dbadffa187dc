#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plagdet/classify.hpp"
#include "plagdet/config.hpp"
#include "plagdet/corpus.hpp"
#include "plagdet/index.hpp"
#include "plagdet/pii.hpp"

namespace plagdet {

struct DetectionReport {
  std::string qry_doc_id;
  std::vector<PlagiarismCase> cases;  // sorted by query span start
  std::vector<ScoredCandidate> candidates;
  std::size_t candidates_examined = 0;
  std::int64_t timing_ms = 0;
};

struct TypeCount {
  std::size_t count = 0;
  double percentage = 0.0;
};

struct ScanError {
  std::string doc_id;
  std::string message;
};

struct AggregateReport {
  std::size_t total_docs = 0;  // successfully scanned
  std::map<PlagiarismType, TypeCount> docs_with_type;
  std::size_t verbatim_cases = 0;
  std::size_t median_chars = 0;
  std::size_t max_chars = 0;
  std::map<PlagiarismType, double> median_occurrences;
  PiiSummary pii;
  std::vector<ScanError> errors;
};

struct CorpusScan {
  AggregateReport aggregate;
  std::vector<DetectionReport> reports;  // sorted by query doc id
};

// Holds the reference side and the configured scorer for repeated scans.
class Detector {
 public:
  Detector(const Corpus &corpus, const Index &index, Config cfg);
  // Uses caller-owned scorer and extractor instead of the configured ones.
  Detector(const Corpus &corpus, const Index &index, Config cfg, const ParaphraseScorer &scorer,
           const EntityExtractor &extractor);
  ~Detector();

  // Throws DataError for an empty document; scorer failures propagate.
  DetectionReport scan(const Document &query) const;
  // Cases of query against one reference document, without retrieval.
  std::vector<PlagiarismCase> compare(const Document &src, const Document &query) const;
  CorpusScan scan_corpus(const Corpus &queries) const;

  const Config &config() const { return cfg_; }

 private:
  std::vector<PlagiarismCase> compare(const Document &src, const NormalizedDoc &src_nd,
                                      const Document &query, const NormalizedDoc &query_nd) const;

  const Corpus &corpus_;
  const Index &index_;
  Config cfg_;
  std::unique_ptr<ServiceClient> client_;
  std::unique_ptr<ParaphraseScorer> owned_scorer_;
  std::unique_ptr<EntityExtractor> owned_extractor_;
  const ParaphraseScorer *scorer_ = nullptr;
  const EntityExtractor *extractor_ = nullptr;
};

DetectionReport scan_document(const Document &query, const Index &index, const Corpus &corpus,
                              const Config &cfg);
CorpusScan scan_corpus(const Corpus &queries, const Index &index, const Corpus &corpus,
                       const Config &cfg);

// Aggregates per-document reports; occurrence counts come from the index.
AggregateReport aggregate(const std::vector<DetectionReport> &reports, std::vector<ScanError> errors,
                          const Index &index, const PiiScanner &scanner);

// JSON forms. with_timing=false leaves timing out so output is reproducible.
nlohmann::json to_json(const PlagiarismCase &c);
nlohmann::json to_json(const DetectionReport &r, bool with_timing = true);
nlohmann::json to_json(const AggregateReport &a);
nlohmann::json to_json(const CorpusScan &s, bool with_timing = true);

PlagiarismCase case_from_json(const nlohmann::json &j);
DetectionReport report_from_json(const nlohmann::json &j);

std::string render_html(const nlohmann::json &scan);

}  // namespace plagdet
