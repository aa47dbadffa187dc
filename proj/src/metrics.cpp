#include "plagdet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>

#include "plagdet/errors.hpp"
#include "plagdet/parallel.hpp"
#include "plagdet/rng.hpp"
#include "plagdet/service_client.hpp"
#include "plagdet/text.hpp"

namespace plagdet {

UniformProvider::UniformProvider(std::size_t vocab_size)
    : v_(vocab_size), log_p_(-std::log(static_cast<double>(vocab_size))) {
  if (vocab_size == 0) throw UsageError("uniform provider needs a positive vocabulary size");
}

namespace {

void pack(std::string &key, std::uint32_t id) {
  char buf[4];
  std::memcpy(buf, &id, 4);
  key.append(buf, 4);
}

}  // namespace

NgramLm NgramLm::train(std::span<const std::vector<std::string>> documents, std::size_t order, double add_k) {
  if (order < 1) throw UsageError("n-gram order must be at least 1");
  if (add_k <= 0) throw UsageError("add-k constant must be positive");
  NgramLm lm;
  lm.order_ = order;
  lm.k_ = add_k;
  std::vector<std::string> words;
  for (const auto &d : documents) words.insert(words.end(), d.begin(), d.end());
  words.emplace_back(kUnknownToken);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  lm.vocab_ = words;
  for (std::uint32_t i = 0; i < lm.vocab_.size(); ++i) lm.ids_.emplace(lm.vocab_[i], i);
  lm.unk_ = lm.ids_.at(std::string(kUnknownToken));

  for (const auto &d : documents) {
    std::vector<std::uint32_t> ids;
    ids.reserve(d.size());
    for (const auto &w : d) ids.push_back(lm.ids_.at(w));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t h = 0; h < order && h <= i; ++h) {
        std::string key;
        for (std::size_t p = i - h; p < i; ++p) pack(key, ids[p]);
        ++lm.history_counts_[key];
        pack(key, ids[i]);
        ++lm.ngram_counts_[key];
      }
    }
  }
  return lm;
}

NgramLm NgramLm::train(const Corpus &corpus, std::size_t order, double add_k) {
  if (corpus.empty()) throw UsageError("cannot train a language model on an empty corpus");
  std::vector<std::vector<std::string>> docs{corpus_token_stream(corpus)};
  return train(docs, order, add_k);
}

std::uint32_t NgramLm::id_of(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? unk_ : it->second;
}

double NgramLm::prob(std::string_view token, std::span<const std::string> context) const {
  const double v = static_cast<double>(vocab_.size());
  std::uint32_t w = id_of(token);
  std::size_t orders = std::min(order_, context.size() + 1);
  double sum = 0.0;
  std::string key;
  for (std::size_t h = 0; h < orders; ++h) {
    key.clear();
    for (std::size_t p = context.size() - h; p < context.size(); ++p) pack(key, id_of(context[p]));
    auto hc = history_counts_.find(key);
    double ch = hc == history_counts_.end() ? 0.0 : static_cast<double>(hc->second);
    pack(key, w);
    auto nc = ngram_counts_.find(key);
    double chw = nc == ngram_counts_.end() ? 0.0 : static_cast<double>(nc->second);
    sum += (chw + k_) / (ch + k_ * v);
  }
  return sum / static_cast<double>(orders);
}

double NgramLm::log_prob(std::string_view token, std::span<const std::string> context) const {
  return std::log(prob(token, context));
}

double ExternalLikelihoodProvider::log_prob(std::string_view token, std::span<const std::string> context) const {
  nlohmann::json body{{"tokens", nlohmann::json::array({token})},
                      {"context", std::vector<std::string>(context.begin(), context.end())}};
  auto j = client_.post("/v1/logprob", body);
  if (!j.is_object() || !j.contains("logp") || !j["logp"].is_number())
    throw ServiceError("likelihood service: response lacks numeric 'logp'");
  double lp = j["logp"].get<double>();
  if (!(lp <= 0.0)) throw ServiceError("likelihood service: log probability above zero");
  return lp;
}

std::vector<std::string> lm_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto &t : tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

std::vector<std::string> corpus_token_stream(const Corpus &corpus) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (i > 0) out.emplace_back(kNewlineToken);
    auto t = lm_tokens(corpus[i].text);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  return out;
}

PerplexityResult perplexity(std::span<const std::string> tokens, const LikelihoodProvider &provider,
                            std::size_t window, std::size_t stride) {
  if (tokens.empty()) throw UsageError("perplexity of empty text");
  if (window < 1 || stride < 1 || stride > window)
    throw UsageError("perplexity needs window >= 1 and 1 <= stride <= window");
  const std::size_t n = tokens.size();
  double nll = 0.0;
  std::size_t prev_end = 0;
  for (std::size_t begin = 0;; begin += stride) {
    std::size_t end = std::min(begin + window, n);
    for (std::size_t i = prev_end; i < end; ++i) nll -= provider.log_prob(tokens[i], tokens.subspan(begin, i - begin));
    prev_end = end;
    if (end == n) break;
  }
  PerplexityResult r;
  r.token_count = n;
  r.window = window;
  r.stride = stride;
  r.value = std::exp(nll / static_cast<double>(n));
  return r;
}

PerplexityResult corpus_perplexity(const Corpus &corpus, const LikelihoodProvider &provider,
                                   std::size_t window, std::size_t stride) {
  if (corpus.empty()) throw UsageError("corpus perplexity of an empty corpus");
  auto stream = corpus_token_stream(corpus);
  return perplexity(stream, provider, window, stride);
}

std::map<std::string, double> per_doc_perplexity(const Corpus &corpus, const LikelihoodProvider &provider,
                                                 std::size_t window, std::size_t stride, unsigned workers) {
  std::vector<double> values(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    auto t = lm_tokens(corpus[i].text);
    if (t.empty()) throw DataError("document '" + corpus[i].id + "' has no tokens");
    values[i] = perplexity(t, provider, window, stride).value;
  });
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) out.emplace(corpus[i].id, values[i]);
  return out;
}

FilterResult filter_low_perplexity(const Corpus &corpus, const std::map<std::string, double> &scores,
                                   double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw UsageError("fraction must be in (0, 1)");
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto &d : corpus) {
    auto it = scores.find(d.id);
    if (it == scores.end()) throw UsageError("no perplexity score for document '" + d.id + "'");
    ranked.emplace_back(it->second, d.id);
  }
  std::sort(ranked.begin(), ranked.end());
  auto remove = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(corpus.size())));
  std::set<std::string> removed;
  FilterResult out;
  for (std::size_t i = 0; i < remove; ++i) {
    removed.insert(ranked[i].second);
    out.removed_ids.push_back(ranked[i].second);
  }
  std::sort(out.removed_ids.begin(), out.removed_ids.end());
  for (const auto &d : corpus)
    if (!removed.contains(d.id)) out.kept.add(d);
  return out;
}

TfidfMatrix::TfidfMatrix(const Corpus &corpus) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::map<std::uint32_t, double>> tf(corpus.size());
  std::vector<std::size_t> df;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto &t : tokenize(corpus[i].text)) {
      if (is_stopword(t.text)) continue;
      auto [it, fresh] = ids.try_emplace(t.text, static_cast<std::uint32_t>(ids.size()));
      if (fresh) df.push_back(0);
      if (tf[i][it->second]++ == 0) ++df[it->second];
    }
  }
  const double n = static_cast<double>(corpus.size());
  rows_.resize(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    double norm = 0.0;
    for (const auto &[term, count] : tf[i]) {
      double w = count * (std::log((1.0 + n) / (1.0 + static_cast<double>(df[term]))) + 1.0);
      rows_[i].emplace_back(term, w);
      norm += w * w;
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto &[term, w] : rows_[i]) w /= norm;
  }
}

double TfidfMatrix::cosine(std::size_t i, std::size_t j) const {
  const auto &a = rows_[i];
  const auto &b = rows_[j];
  double dot = 0.0;
  auto p = a.begin(), q = b.begin();
  while (p != a.end() && q != b.end()) {
    if (p->first == q->first) {
      dot += p->second * q->second;
      ++p;
      ++q;
    } else if (p->first < q->first) {
      ++p;
    } else {
      ++q;
    }
  }
  return std::clamp(dot, 0.0, 1.0);
}

SimilarityMatrixSummary intra_similarity(const Corpus &corpus, std::size_t sample_cap, std::size_t sample_pairs,
                                         std::uint64_t seed, std::vector<double> thresholds, unsigned workers) {
  if (corpus.size() < 2) throw UsageError("intra-corpus similarity needs at least two documents");
  TfidfMatrix m(corpus);
  const std::size_t n = corpus.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  SimilarityMatrixSummary out;
  if (n <= sample_cap) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    out.sampled = true;
    Rng rng(seed);
    while (pairs.size() < sample_pairs) {
      std::size_t i = rng.below(n), j = rng.below(n);
      if (i == j) continue;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::vector<double> cos(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t k) { cos[k] = m.cosine(pairs[k].first, pairs[k].second); });
  double sum = 0.0;
  for (double t : thresholds) out.pairs_above[t] = 0;
  for (double c : cos) {
    sum += c;
    for (double t : thresholds)
      if (c > t) ++out.pairs_above[t];
  }
  out.pairs_evaluated = pairs.size();
  out.mean_cosine = sum / static_cast<double>(pairs.size());
  return out;
}

FilterResult filter_near_duplicates(const Corpus &corpus, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw UsageError("threshold must be in (0, 1]");
  TfidfMatrix m(corpus);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });
  std::vector<std::size_t> kept;
  std::set<std::size_t> keep_set;
  FilterResult out;
  for (std::size_t i : order) {
    bool dup = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) { return m.cosine(i, k) > threshold; });
    if (dup) {
      out.removed_ids.push_back(corpus[i].id);
    } else {
      kept.push_back(i);
      keep_set.insert(i);
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (keep_set.contains(i)) out.kept.add(corpus[i]);
  return out;
}

double chi_squared_sf_1(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

ChiSquaredResult chi_squared_test(double a, double b, double c, double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw UsageError("contingency counts must be non-negative");
  double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  if (r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) throw UsageError("contingency table has a zero margin");
  double n = a + b + c + d;
  double diff = a * d - b * c;
  ChiSquaredResult r;
  r.statistic = n * diff * diff / (r1 * r2 * c1 * c2);
  r.p = chi_squared_sf_1(r.statistic);
  return r;
}

}  // namespace plagdet
