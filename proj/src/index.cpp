#include "plagdet/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "plagdet/errors.hpp"
#include "plagdet/kernels.hpp"
#include "plagdet/parallel.hpp"
#include "plagdet/text.hpp"

namespace plagdet {
namespace {

constexpr char kMagic[8] = {'P', 'L', 'A', 'G', 'I', 'D', 'X', '\0'};

void put_u32(std::ostream &out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char *>(b), 4);
}

void put_u64(std::ostream &out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char *>(b), 8);
}

void put_str(std::ostream &out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
 public:
  explicit Reader(std::istream &in) : in_(in) {}

  void bytes(char *dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw DataError("index file truncated");
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char *>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char *>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::string str() {
    std::uint32_t n = u32();
    if (n > (1u << 30)) throw DataError("index file corrupt: string length");
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }

 private:
  std::istream &in_;
};

bool candidate_before(const ScoredCandidate &a, const ScoredCandidate &b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

}  // namespace

double bm25_idf(std::size_t doc_count, std::size_t df) {
  double n = static_cast<double>(doc_count);
  double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

std::uint64_t text_hash(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Index Index::build(const Corpus &corpus, unsigned workers) {
  std::vector<std::vector<std::string>> stems(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    auto nd = normalize(corpus[i]);
    stems[i].reserve(nd.tokens.size());
    for (auto &t : nd.tokens) stems[i].push_back(std::move(t.stem));
  });

  Index idx;
  {
    std::vector<std::string> vocab;
    for (const auto &s : stems) vocab.insert(vocab.end(), s.begin(), s.end());
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    idx.terms_ = std::move(vocab);
  }
  for (std::uint32_t t = 0; t < idx.terms_.size(); ++t) idx.term_ids_.emplace(idx.terms_[t], t);
  idx.postings_.resize(idx.terms_.size());

  std::vector<std::uint32_t> tf_scratch(idx.terms_.size(), 0);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    idx.doc_ids_.push_back(corpus[d].id);
    idx.text_hashes_.push_back(text_hash(corpus[d].text));
    std::vector<std::uint32_t> seq;
    seq.reserve(stems[d].size());
    for (const auto &s : stems[d]) seq.push_back(idx.term_ids_.at(s));
    idx.doc_lengths_.push_back(static_cast<std::uint32_t>(seq.size()));
    std::vector<std::uint32_t> seen;
    for (std::uint32_t t : seq) {
      if (tf_scratch[t]++ == 0) seen.push_back(t);
    }
    for (std::uint32_t t : seen) {
      idx.postings_[t].push_back({static_cast<std::uint32_t>(d), tf_scratch[t]});
      tf_scratch[t] = 0;
    }
    idx.doc_terms_.push_back(std::move(seq));
  }
  idx.finalize();
  return idx;
}

void Index::finalize() {
  doc_by_id_.clear();
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) doc_by_id_.emplace(doc_ids_[d], d);
  if (term_ids_.size() != terms_.size()) {
    term_ids_.clear();
    for (std::uint32_t t = 0; t < terms_.size(); ++t) term_ids_.emplace(terms_[t], t);
  }
  std::uint64_t total = 0;
  for (auto len : doc_lengths_) total += len;
  avg_doc_length_ =
      doc_lengths_.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(doc_lengths_.size());
}

std::optional<std::size_t> Index::doc_index(std::string_view id) const {
  auto it = doc_by_id_.find(std::string(id));
  if (it == doc_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Index::term_id(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t Index::document_frequency(std::string_view term) const {
  auto id = term_id(term);
  return id ? postings_[*id].size() : 0;
}

double Index::idf(std::string_view term) const {
  return bm25_idf(doc_count(), document_frequency(term));
}

std::vector<double> Index::all_scores(std::span<const std::string> query_terms,
                                      const Bm25Params &params) const {
  if (params.k1 <= 0.0 || params.b < 0.0 || params.b > 1.0)
    throw UsageError("BM25 parameters require k1 > 0 and 0 <= b <= 1");
  std::map<std::string_view, std::uint32_t> qtf;
  for (const auto &t : query_terms) ++qtf[t];

  std::vector<double> scores(doc_count(), 0.0);
  std::vector<double> norm_by_doc(doc_count());
  for (std::size_t d = 0; d < doc_count(); ++d)
    norm_by_doc[d] = 1.0 - params.b + params.b * static_cast<double>(doc_lengths_[d]) / avg_doc_length_;

  std::vector<double> tf, norm, contrib;
  for (const auto &[term, count] : qtf) {
    auto id = term_id(term);
    if (!id) continue;
    const auto &plist = postings_[*id];
    tf.resize(plist.size());
    norm.resize(plist.size());
    contrib.resize(plist.size());
    for (std::size_t i = 0; i < plist.size(); ++i) {
      tf[i] = static_cast<double>(plist[i].tf);
      norm[i] = norm_by_doc[plist[i].doc];
    }
    double weight = static_cast<double>(count) * bm25_idf(doc_count(), plist.size());
    kernels::bm25_contrib(tf, norm, weight, params.k1, contrib);
    for (std::size_t i = 0; i < plist.size(); ++i) scores[plist[i].doc] += contrib[i];
  }
  return scores;
}

double Index::bm25_score(std::span<const std::string> query_terms, std::string_view doc_id,
                         const Bm25Params &params) const {
  auto d = doc_index(doc_id);
  if (!d) throw UsageError("unknown document id '" + std::string(doc_id) + "'");
  return all_scores(query_terms, params)[*d];
}

std::vector<ScoredCandidate> Index::retrieve_terms(std::span<const std::string> query_terms,
                                                   std::size_t n_prime,
                                                   const Bm25Params &params) const {
  if (n_prime == 0) throw UsageError("n_prime must be at least 1");
  if (query_terms.empty()) throw UsageError("query is empty after normalization");
  auto scores = all_scores(query_terms, params);
  std::vector<ScoredCandidate> all;
  for (std::size_t d = 0; d < scores.size(); ++d)
    if (scores[d] > 0.0) all.push_back({doc_ids_[d], scores[d]});
  std::size_t keep = std::min(n_prime, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    candidate_before);
  all.resize(keep);
  return all;
}

std::vector<ScoredCandidate> Index::retrieve(const Document &query, std::size_t n_prime,
                                             const Bm25Params &params) const {
  std::vector<std::string> terms = stem_sequence(query.text);
  if (terms.empty()) throw UsageError("query '" + query.id + "' is empty after normalization");
  auto ranked = retrieve_terms(terms, n_prime, params);

  // Exact copies of the query text go first.
  std::uint64_t h = text_hash(query.text);
  std::vector<ScoredCandidate> exact;
  for (std::size_t d = 0; d < doc_count(); ++d) {
    if (text_hashes_[d] != h || doc_terms_[d].size() != terms.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < terms.size() && same; ++i) same = terms_[doc_terms_[d][i]] == terms[i];
    if (same) exact.push_back({doc_ids_[d], bm25_score(terms, doc_ids_[d], params)});
  }
  if (exact.empty()) return ranked;
  std::sort(exact.begin(), exact.end(), candidate_before);
  std::vector<ScoredCandidate> out = exact;
  for (auto &c : ranked) {
    if (out.size() >= n_prime) break;
    bool dup = std::any_of(exact.begin(), exact.end(),
                           [&](const ScoredCandidate &e) { return e.doc_id == c.doc_id; });
    if (!dup) out.push_back(std::move(c));
  }
  out.resize(std::min(out.size(), n_prime));
  return out;
}

std::size_t Index::count_occurrences(std::string_view snippet, std::size_t cap) const {
  std::vector<std::string> stems = stem_sequence(snippet);
  if (stems.empty() || cap == 0) return 0;
  std::vector<std::uint32_t> pattern;
  pattern.reserve(stems.size());
  for (const auto &s : stems) {
    auto id = term_id(s);
    if (!id) return 0;
    pattern.push_back(*id);
  }
  // Scan only documents holding the rarest pattern term.
  std::uint32_t rarest = *std::min_element(pattern.begin(), pattern.end(), [&](auto a, auto b) {
    return postings_[a].size() < postings_[b].size();
  });
  std::size_t count = 0;
  for (const Posting &p : postings_[rarest]) {
    const auto &seq = doc_terms_[p.doc];
    if (seq.size() < pattern.size()) continue;
    auto it = std::search(seq.begin(), seq.end(), pattern.begin(), pattern.end());
    if (it != seq.end() && ++count >= cap) return cap;
  }
  return count;
}

void Index::save(std::ostream &out) const {
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kFormatVersion);
  put_u64(out, doc_ids_.size());
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    put_str(out, doc_ids_[d]);
    put_u64(out, text_hashes_[d]);
    put_u32(out, static_cast<std::uint32_t>(doc_terms_[d].size()));
    for (std::uint32_t t : doc_terms_[d]) put_u32(out, t);
  }
  put_u64(out, terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    put_str(out, terms_[t]);
    put_u64(out, postings_[t].size());
    for (const Posting &p : postings_[t]) {
      put_u32(out, p.doc);
      put_u32(out, p.tf);
    }
  }
  if (!out) throw DataError("failed writing index");
}

Index Index::load(std::istream &in) {
  Reader r(in);
  char magic[sizeof kMagic];
  r.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw DataError("not an index file (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw DataError("unsupported index format version " + std::to_string(version));

  Index idx;
  std::uint64_t ndocs = r.u64();
  for (std::uint64_t d = 0; d < ndocs; ++d) {
    idx.doc_ids_.push_back(r.str());
    idx.text_hashes_.push_back(r.u64());
    std::uint32_t len = r.u32();
    std::vector<std::uint32_t> seq(len);
    for (auto &t : seq) t = r.u32();
    idx.doc_lengths_.push_back(len);
    idx.doc_terms_.push_back(std::move(seq));
  }
  std::uint64_t nterms = r.u64();
  for (std::uint64_t t = 0; t < nterms; ++t) {
    idx.terms_.push_back(r.str());
    std::uint64_t n = r.u64();
    std::vector<Posting> plist(n);
    for (auto &p : plist) {
      p.doc = r.u32();
      p.tf = r.u32();
      if (p.doc >= ndocs) throw DataError("index file corrupt: posting doc out of range");
    }
    idx.postings_.push_back(std::move(plist));
  }
  for (const auto &seq : idx.doc_terms_)
    for (auto t : seq)
      if (t >= nterms) throw DataError("index file corrupt: term id out of range");
  idx.finalize();
  return idx;
}

bool operator==(const Index &a, const Index &b) {
  return a.terms_ == b.terms_ && a.postings_ == b.postings_ && a.doc_ids_ == b.doc_ids_ &&
         a.doc_lengths_ == b.doc_lengths_ && a.text_hashes_ == b.text_hashes_ &&
         a.doc_terms_ == b.doc_terms_;
}

}  // namespace plagdet
