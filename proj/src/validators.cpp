#include "plagdet/validators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "plagdet/errors.hpp"
#include "plagdet/service_client.hpp"
#include "plagdet/text.hpp"

namespace plagdet {

std::vector<std::string> content_stems(std::span<const std::string> stems) {
  std::vector<std::string> out;
  for (const auto &s : stems)
    if (!is_stopword(s)) out.push_back(s);
  if (out.empty()) out.assign(stems.begin(), stems.end());
  return out;
}

double order_divergence(std::span<const std::string> a, std::span<const std::string> b) {
  std::unordered_map<std::string_view, std::size_t> pos_b;
  for (std::size_t i = 0; i < b.size(); ++i) pos_b.try_emplace(b[i], i);
  std::set<std::string_view> seen;
  std::vector<std::size_t> seq;
  for (const auto &w : a) {
    if (!seen.insert(w).second) continue;
    auto it = pos_b.find(w);
    if (it != pos_b.end()) seq.push_back(it->second);
  }
  if (seq.empty()) return 1.0;
  if (seq.size() == 1) return 0.0;
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++discordant;
  double pairs = static_cast<double>(seq.size()) * static_cast<double>(seq.size() - 1) / 2.0;
  return static_cast<double>(discordant) / pairs;
}

BuiltinLexicalScorer::BuiltinLexicalScorer(IdfFn idf, LexicalWeights weights)
    : idf_(std::move(idf)), weights_(weights) {}

double BuiltinLexicalScorer::score(std::string_view a, std::string_view b) const {
  auto sa = stem_sequence(a);
  auto sb = stem_sequence(b);
  return score_stems(sa, sb);
}

double BuiltinLexicalScorer::score_stems(std::span<const std::string> a_all,
                                         std::span<const std::string> b_all) const {
  if (a_all.empty() || b_all.empty()) return 0.0;
  auto a = content_stems(a_all);
  auto b = content_stems(b_all);

  std::map<std::string_view, std::pair<double, double>> tf;
  for (const auto &w : a) tf[w].first += 1.0;
  for (const auto &w : b) tf[w].second += 1.0;
  std::size_t both = 0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto &[w, c] : tf) {
    if (c.first > 0 && c.second > 0) ++both;
    double idf = idf_ ? idf_(w) : 1.0;
    double x = c.first * idf, y = c.second * idf;
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  double jaccard = static_cast<double>(both) / static_cast<double>(tf.size());
  double cos = (na > 0 && nb > 0) ? std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0) : 0.0;
  double order = 1.0 - order_divergence(a, b);
  double s = weights_.jaccard * jaccard + weights_.cosine * cos + weights_.order * order;
  return std::clamp(s, 0.0, 1.0);
}

double builtin_paraphrase_score(std::string_view a, std::string_view b) {
  return BuiltinLexicalScorer().score(a, b);
}

double ExternalParaphraseScorer::score(std::string_view a, std::string_view b) const {
  auto j = client_.post("/v1/paraphrase", {{"a", a}, {"b", b}});
  if (!j.is_object() || !j.contains("score") || !j["score"].is_number())
    throw ServiceError("paraphrase service: response lacks numeric 'score'");
  double s = j["score"].get<double>();
  if (!(s >= 0.0 && s <= 1.0)) throw ServiceError("paraphrase service: score outside [0, 1]");
  return s;
}

EntitySet ExternalEntityExtractor::extract(std::string_view sentence) const {
  auto j = client_.post("/v1/entities", {{"text", sentence}});
  if (!j.is_object() || !j.contains("entities") || !j["entities"].is_array())
    throw ServiceError("entity service: response lacks 'entities' array");
  EntitySet out;
  for (const auto &e : j["entities"]) {
    if (!e.is_object() || !e.contains("kind") || !e.contains("text") || !e["kind"].is_string() ||
        !e["text"].is_string())
      throw ServiceError("entity service: malformed entity record");
    try {
      out.insert({entity_kind_from_string(e["kind"].get<std::string>()),
                  to_lower(collapse_whitespace(e["text"].get<std::string>()))});
    } catch (const DataError &err) {
      throw ServiceError(std::string("entity service: ") + err.what());
    }
  }
  return out;
}

std::vector<CharSpan> quoted_regions(std::string_view text) {
  static constexpr std::string_view kOpen = "\xE2\x80\x9C";   // left double quote
  static constexpr std::string_view kClose = "\xE2\x80\x9D";  // right double quote
  std::vector<CharSpan> out;
  constexpr std::size_t none = std::string_view::npos;
  std::size_t straight = none, curly = none;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '"') {
      if (straight != none) {
        out.push_back({straight, i + 1});
        straight = none;
      } else {
        straight = i;
      }
      ++i;
    } else if (text.substr(i, 3) == kOpen) {
      curly = i;
      i += 3;
    } else if (text.substr(i, 3) == kClose) {
      if (curly != none) out.push_back({curly, i + 3});
      curly = none;
      i += 3;
    } else {
      ++i;
    }
  }
  std::sort(out.begin(), out.end(), [](const CharSpan &a, const CharSpan &b) { return a.begin < b.begin; });
  return out;
}

bool is_quoted_sentence(std::string_view text, const CharSpan &sentence,
                        std::span<const CharSpan> regions) {
  for (const auto &r : regions) {
    if (r.begin > sentence.begin) break;
    if (sentence.end <= r.end) return true;
    std::string_view tail = text.substr(r.end, sentence.end - r.end);
    if (r.end < sentence.end && tail.find_first_not_of(".?!") == std::string_view::npos) return true;
  }
  return false;
}

std::optional<FragmentPair> strip_quoted(FragmentPair f, const Document &qry,
                                         const NormalizedDoc &qry_nd, std::size_t min_chars) {
  auto regions = quoted_regions(qry.text);
  std::string_view text = qry.text;
  std::vector<std::size_t> kept;
  std::vector<std::size_t> excluded;
  for (std::size_t s = f.qry_first_sentence; s < f.qry_first_sentence + f.qry_sentence_count; ++s) {
    bool already = std::find(f.qry_excluded.begin(), f.qry_excluded.end(), s) != f.qry_excluded.end();
    if (already || (!regions.empty() && is_quoted_sentence(text, qry_nd.sentences[s].span, regions)))
      excluded.push_back(s);
    else
      kept.push_back(s);
  }
  if (kept.empty()) return std::nullopt;
  std::size_t first = kept.front(), last = kept.back();
  f.qry_first_sentence = first;
  f.qry_sentence_count = last - first + 1;
  f.qry_span = {qry_nd.sentences[first].span.begin, qry_nd.sentences[last].span.end};
  f.qry_excluded.clear();
  std::size_t chars = utf8_length(text.substr(f.qry_span.begin, f.qry_span.size()));
  for (std::size_t s : excluded) {
    if (s < first || s > last) continue;
    const CharSpan &sp = qry_nd.sentences[s].span;
    chars -= utf8_length(text.substr(sp.begin, sp.size()));
    f.qry_excluded.push_back(s);
  }
  f.qry_chars = chars;
  if (f.qry_chars < min_chars) return std::nullopt;
  return f;
}

std::optional<FragmentPair> strip_quoted(FragmentPair fragment, const Document &qry,
                                         std::size_t min_chars) {
  return strip_quoted(std::move(fragment), qry, normalize(qry), min_chars);
}

namespace {

struct SentenceInfo {
  std::string_view text;
  std::vector<std::string> stems;
  EntitySet entities;
};

std::vector<SentenceInfo> sentence_info(const Document &doc, const NormalizedDoc &nd,
                                        std::size_t first, std::size_t count,
                                        std::span<const std::size_t> skip,
                                        const EntityExtractor &extractor) {
  std::vector<SentenceInfo> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t s = first + k;
    if (std::find(skip.begin(), skip.end(), s) != skip.end()) continue;
    const Sentence &sent = nd.sentences[s];
    SentenceInfo &info = out[k];
    info.text = std::string_view(doc.text).substr(sent.span.begin, sent.span.size());
    for (std::size_t t = sent.first_token; t < sent.end_token; ++t) info.stems.push_back(nd.tokens[t].stem);
    info.entities = extractor.extract(info.text);
  }
  return out;
}

}  // namespace

ValidationOutcome validate(const FragmentPair &f, const Document &src, const NormalizedDoc &src_nd,
                           const Document &qry, const NormalizedDoc &qry_nd,
                           const ParaphraseScorer &scorer, const EntityExtractor &extractor,
                           const ValidationBand &band) {
  ValidationOutcome out;
  out.pruned_quoted_sentences = f.qry_excluded.size();
  auto srcs = sentence_info(src, src_nd, f.src_first_sentence, f.src_sentence_count, {}, extractor);
  auto qrys = sentence_info(qry, qry_nd, f.qry_first_sentence, f.qry_sentence_count, f.qry_excluded,
                            extractor);
  const auto *lexical = dynamic_cast<const BuiltinLexicalScorer *>(&scorer);

  double best_any = -1.0;
  std::pair<std::size_t, std::size_t> best_any_pair{};
  bool best_any_entities = false;
  for (std::size_t i = 0; i < srcs.size(); ++i) {
    if (srcs[i].text.empty()) continue;
    for (std::size_t j = 0; j < qrys.size(); ++j) {
      if (qrys[j].text.empty()) continue;
      double s = lexical ? lexical->score_stems(srcs[i].stems, qrys[j].stems)
                         : scorer.score(srcs[i].text, qrys[j].text);
      ++out.pairs_scored;
      bool same_entities = srcs[i].entities == qrys[j].entities;
      std::pair<std::size_t, std::size_t> idx{f.src_first_sentence + i, f.qry_first_sentence + j};
      if (band.contains(s) && same_entities) {
        ++out.accepting_pairs;
        if (!out.accepted || s > out.best_prob) {
          out.accepted = true;
          out.best_prob = s;
          out.matched_sentence_pair = idx;
        }
      }
      if (s > best_any) {
        best_any = s;
        best_any_pair = idx;
        best_any_entities = same_entities;
      }
    }
  }
  if (out.accepted) {
    out.entity_match = true;
  } else if (best_any >= 0.0) {
    out.best_prob = best_any;
    out.matched_sentence_pair = best_any_pair;
    out.entity_match = best_any_entities;
  }
  return out;
}

}  // namespace plagdet
