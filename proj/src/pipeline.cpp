#include "plagdet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "plagdet/errors.hpp"
#include "plagdet/parallel.hpp"
#include "plagdet/service_client.hpp"
#include "plagdet/text.hpp"

namespace plagdet {

Detector::Detector(const Corpus &corpus, const Index &index, Config cfg)
    : corpus_(corpus), index_(index), cfg_(std::move(cfg)) {
  if (cfg_.scorer == "external" || cfg_.entities == "external")
    client_ = std::make_unique<ServiceClient>(cfg_.service_url,
                                              std::chrono::milliseconds(cfg_.service_timeout_ms),
                                              cfg_.service_max_in_flight);
  if (cfg_.scorer == "external") {
    owned_scorer_ = std::make_unique<ExternalParaphraseScorer>(*client_);
  } else {
    const Index *idx = &index_;
    owned_scorer_ = std::make_unique<BuiltinLexicalScorer>(
        [idx](std::string_view t) { return idx->idf(t); }, cfg_.lexical);
  }
  if (cfg_.entities == "external")
    owned_extractor_ = std::make_unique<ExternalEntityExtractor>(*client_);
  else
    owned_extractor_ = std::make_unique<BuiltinEntityExtractor>();
  scorer_ = owned_scorer_.get();
  extractor_ = owned_extractor_.get();
}

Detector::Detector(const Corpus &corpus, const Index &index, Config cfg, const ParaphraseScorer &scorer,
                   const EntityExtractor &extractor)
    : corpus_(corpus), index_(index), cfg_(std::move(cfg)), scorer_(&scorer), extractor_(&extractor) {}

Detector::~Detector() = default;

std::vector<PlagiarismCase> Detector::compare(const Document &src, const Document &query) const {
  return compare(src, normalize(src), query, normalize(query));
}

std::vector<PlagiarismCase> Detector::compare(const Document &src, const NormalizedDoc &src_nd,
                                              const Document &query,
                                              const NormalizedDoc &query_nd) const {
  std::vector<PlagiarismCase> cases;
  auto spans = longest_common_substrings(src, query, cfg_.verbatim_min_chars);
  const Index *idx = &index_;
  auto aligned = align(src, src_nd, query, query_nd, cfg_.align,
                       [idx](std::string_view t) { return idx->idf(t); });
  ClassifyParams cp{cfg_.ratio_threshold, cfg_.verbatim_min_chars};

  for (const auto &raw : aligned.fragments) {
    auto f = strip_quoted(raw, query, query_nd, cfg_.align.min_fragment_chars);
    if (!f) continue;
    auto validation = validate(*f, src, src_nd, query, query_nd, *scorer_, *extractor_, cfg_.band);
    bool verbatim = std::any_of(spans.begin(), spans.end(), [&](const VerbatimSpan &v) {
      return v.length_chars >= cfg_.verbatim_min_chars && v.qry.overlaps(f->qry_span);
    });
    bool near_dup = !verbatim && validation.accepted &&
                    near_duplicate_guard(*f, src, query, cfg_.near_duplicate_distance);
    auto c = classify(*f, spans, validation, cp, near_dup);
    if (!c) continue;
    c->evidence.flags.push_back(std::string("alignment:") + std::string(to_string(aligned.setting)));
    cases.push_back(std::move(*c));
  }

  auto regions = quoted_regions(query.text);
  for (const auto &v : spans) {
    bool covered = std::any_of(cases.begin(), cases.end(),
                               [&](const PlagiarismCase &c) { return c.qry_span.overlaps(v.qry); });
    if (covered) continue;
    bool quoted = std::any_of(regions.begin(), regions.end(),
                              [&](const CharSpan &r) { return r.contains(v.qry); });
    if (quoted) continue;
    cases.push_back(verbatim_case(v));
  }
  for (auto &c : cases) {
    c.src_doc_id = src.id;
    c.qry_text = query.text.substr(c.qry_span.begin, c.qry_span.size());
  }
  return cases;
}

DetectionReport Detector::scan(const Document &query) const {
  auto start = std::chrono::steady_clock::now();
  DetectionReport report;
  report.qry_doc_id = query.id;
  NormalizedDoc qnd = normalize(query);
  if (qnd.tokens.empty()) throw DataError("query document '" + query.id + "' has no tokens");
  report.candidates = index_.retrieve(query, cfg_.n_prime, cfg_.bm25);
  report.candidates_examined = report.candidates.size();
  for (const auto &cand : report.candidates) {
    const Document *src = corpus_.find(cand.doc_id);
    if (!src) throw DataError("indexed document '" + cand.doc_id + "' is missing from the corpus");
    auto cases = compare(*src, normalize(*src), query, qnd);
    for (auto &c : cases) report.cases.push_back(std::move(c));
  }
  std::stable_sort(report.cases.begin(), report.cases.end(), [](const PlagiarismCase &a, const PlagiarismCase &b) {
    if (a.qry_span.begin != b.qry_span.begin) return a.qry_span.begin < b.qry_span.begin;
    if (a.src_doc_id != b.src_doc_id) return a.src_doc_id < b.src_doc_id;
    return a.src_span.begin < b.src_span.begin;
  });
  report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return report;
}

CorpusScan Detector::scan_corpus(const Corpus &queries) const {
  std::vector<std::optional<DetectionReport>> slots(queries.size());
  std::vector<std::optional<ScanError>> failures(queries.size());
  parallel_for(queries.size(), cfg_.effective_workers(), [&](std::size_t i) {
    try {
      slots[i] = scan(queries[i]);
    } catch (const ServiceError &) {
      throw;
    } catch (const DataError &e) {
      failures[i] = ScanError{queries[i].id, e.what()};
    }
  });
  CorpusScan out;
  std::vector<ScanError> errors;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (slots[i]) out.reports.push_back(std::move(*slots[i]));
    if (failures[i]) errors.push_back(std::move(*failures[i]));
  }
  std::sort(out.reports.begin(), out.reports.end(),
            [](const DetectionReport &a, const DetectionReport &b) { return a.qry_doc_id < b.qry_doc_id; });
  std::sort(errors.begin(), errors.end(), [](const ScanError &a, const ScanError &b) { return a.doc_id < b.doc_id; });
  out.aggregate = aggregate(out.reports, std::move(errors), index_,
                            PiiScanner::from_data_dir(PLAGDET_DATA_DIR,
                                                      {cfg_.pii_threshold, cfg_.pii_name_confidence,
                                                       cfg_.pii_name_fallback_confidence,
                                                       cfg_.pii_location_confidence}));
  return out;
}

namespace {

template <typename T>
double median(std::vector<T> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? static_cast<double>(v[n / 2]) : (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

constexpr PlagiarismType kTypes[] = {PlagiarismType::Verbatim, PlagiarismType::Paraphrase, PlagiarismType::Idea};

}  // namespace

AggregateReport aggregate(const std::vector<DetectionReport> &reports, std::vector<ScanError> errors,
                          const Index &index, const PiiScanner &scanner) {
  AggregateReport a;
  a.total_docs = reports.size();
  a.errors = std::move(errors);
  for (PlagiarismType t : kTypes) a.docs_with_type[t] = {};
  std::vector<std::size_t> lengths;
  std::map<PlagiarismType, std::vector<std::size_t>> occurrences;
  std::vector<PlagiarismCase> all;
  for (const auto &r : reports) {
    std::set<PlagiarismType> types;
    for (const auto &c : r.cases) {
      types.insert(c.type);
      if (c.type == PlagiarismType::Verbatim) lengths.push_back(utf8_length(c.qry_text));
      occurrences[c.type].push_back(index.count_occurrences(c.qry_text));
      all.push_back(c);
    }
    for (PlagiarismType t : types) ++a.docs_with_type[t].count;
  }
  for (auto &[t, tc] : a.docs_with_type)
    tc.percentage = a.total_docs ? 100.0 * static_cast<double>(tc.count) / static_cast<double>(a.total_docs) : 0.0;
  a.verbatim_cases = lengths.size();
  a.median_chars = static_cast<std::size_t>(median(lengths));
  a.max_chars = lengths.empty() ? 0 : *std::max_element(lengths.begin(), lengths.end());
  for (PlagiarismType t : kTypes) a.median_occurrences[t] = median(occurrences[t]);
  a.pii = pii_summary(all, scanner);
  return a;
}

DetectionReport scan_document(const Document &query, const Index &index, const Corpus &corpus,
                              const Config &cfg) {
  return Detector(corpus, index, cfg).scan(query);
}

CorpusScan scan_corpus(const Corpus &queries, const Index &index, const Corpus &corpus, const Config &cfg) {
  return Detector(corpus, index, cfg).scan_corpus(queries);
}

}  // namespace plagdet
