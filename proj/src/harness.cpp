#include "plagdet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include "plagdet/errors.hpp"
#include "plagdet/metrics.hpp"
#include "plagdet/parallel.hpp"
#include "plagdet/pipeline.hpp"
#include "plagdet/synth.hpp"
#include "plagdet/text.hpp"

namespace plagdet {

using nlohmann::json;

std::string_view to_string(PairLabel label) {
  switch (label) {
    case PairLabel::None: return "none";
    case PairLabel::Verbatim: return "verbatim";
    case PairLabel::Paraphrase: return "paraphrase";
    case PairLabel::Idea: return "idea";
  }
  return "none";
}

PairLabel pair_label_from_string(std::string_view s) {
  for (PairLabel l : kAllLabels)
    if (to_string(l) == s) return l;
  throw DataError("unknown pair label '" + std::string(s) + "'");
}

std::string_view to_string(EvalMode mode) { return mode == EvalMode::Binary ? "binary" : "multinomial"; }

Thesaurus::Thesaurus(std::map<std::string, std::vector<std::string>> entries) {
  for (auto &[k, v] : entries) entries_.emplace(k, std::move(v));
}

Thesaurus Thesaurus::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open thesaurus '" + path + "'");
  std::map<std::string, std::vector<std::string>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (collapse_whitespace(line).empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw DataError(path + ":" + std::to_string(lineno) + ": expected 'word: synonyms'");
    std::string head = to_lower(collapse_whitespace(line.substr(0, colon)));
    auto &syns = entries[head];
    std::string rest = line.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      std::string s = to_lower(collapse_whitespace(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (!s.empty() && s != head && std::find(syns.begin(), syns.end(), s) == syns.end()) syns.push_back(s);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return Thesaurus(std::move(entries));
}

std::vector<std::string> Thesaurus::synonyms(std::string_view word) const {
  if (auto it = entries_.find(word); it != entries_.end()) return it->second;
  std::vector<std::string> out;
  auto try_singular = [&](std::string singular) {
    if (!out.empty()) return;
    auto it = entries_.find(singular);
    if (it == entries_.end() || pluralize(singular) != word) return;
    for (const auto &s : it->second) out.push_back(pluralize(s));
  };
  if (word.ends_with("ies")) try_singular(std::string(word.substr(0, word.size() - 3)) + "y");
  if (word.ends_with("es")) try_singular(std::string(word.substr(0, word.size() - 2)));
  if (word.ends_with("s")) try_singular(std::string(word.substr(0, word.size() - 1)));
  return out;
}

namespace {

bool lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool alpha(char c) { return lower_alpha(c) || (c >= 'A' && c <= 'Z'); }

struct WordPos {
  std::size_t begin, end;
};

std::vector<WordPos> words_of(std::string_view s) {
  std::vector<WordPos> out;
  for (std::size_t i = 0; i < s.size();) {
    if (!alpha(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (alpha(s[j]) || s[j] == '-')) ++j;
    out.push_back({i, j});
    i = j;
  }
  return out;
}

const std::vector<std::string_view> kFrontAdjuncts = {"In ", "During "};
const std::vector<std::string_view> kTrailingAdjuncts = {" in ", " on ", " with the ", " near the ", " for the "};

std::string lower_first(std::string s) {
  static const std::set<std::string_view> function_words = {"The", "A", "An"};
  auto sp = s.find(' ');
  if (function_words.contains(std::string_view(s).substr(0, sp))) s[0] = static_cast<char>(s[0] - 'A' + 'a');
  return s;
}

std::string upper_first(std::string s) {
  if (!s.empty() && lower_alpha(s[0])) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::optional<std::string> reorder_adjunct(const std::string &s, json &edits) {
  if (s.empty() || s.back() != '.') return std::nullopt;
  std::string body = s.substr(0, s.size() - 1);
  for (auto front : kFrontAdjuncts) {
    if (!body.starts_with(front)) continue;
    auto comma = body.find(", ");
    if (comma == std::string::npos) return std::nullopt;
    std::string phrase = body.substr(0, comma);
    std::string rest = body.substr(comma + 2);
    phrase[0] = static_cast<char>(phrase[0] - 'A' + 'a');
    edits.push_back({{"op", "move_to_end"}, {"phrase", phrase}});
    return upper_first(rest) + " " + phrase + ".";
  }
  // Trailing adjunct: the last matching preposition after the verb.
  std::size_t best = std::string::npos;
  for (auto marker : kTrailingAdjuncts) {
    auto p = body.rfind(marker);
    if (p != std::string::npos && p > 0 && (best == std::string::npos || p > best)) best = p;
  }
  if (best == std::string::npos) return std::nullopt;
  std::string phrase = body.substr(best + 1);
  std::string rest = body.substr(0, best);
  if (std::count(phrase.begin(), phrase.end(), ' ') > 5 || words_of(rest).size() < 3) return std::nullopt;
  edits.push_back({{"op", "move_to_front"}, {"phrase", phrase}});
  return upper_first(phrase) + ", " + lower_first(rest) + ".";
}

std::size_t utf8_boundary(std::string_view s, std::size_t i) {
  while (i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
  return i;
}

std::string sus_id(std::string_view kind, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "sus-%s-%04zu", std::string(kind).c_str(), i);
  return buf;
}

std::vector<std::string> sentences_of(const Document &d) {
  std::vector<std::string> out;
  for (const auto &sp : split_sentences(d.text)) out.emplace_back(d.text.substr(sp.begin, sp.size()));
  return out;
}

}  // namespace

Obfuscation obfuscate_sentence(std::string_view sentence, const Thesaurus &thesaurus, double rate, Rng &rng,
                               bool reorder) {
  Obfuscation out;
  std::string s(sentence);
  auto words = words_of(s);
  std::vector<std::pair<WordPos, std::vector<std::string>>> candidates;
  std::size_t content = 0;
  for (const auto &w : words) {
    std::string_view word = std::string_view(s).substr(w.begin, w.end - w.begin);
    if (!lower_alpha(word[0]) || is_stopword(word)) continue;
    ++content;
    auto syns = thesaurus.synonyms(word);
    if (!syns.empty()) candidates.emplace_back(w, std::move(syns));
  }
  auto want = static_cast<std::size_t>(std::llround(rate * static_cast<double>(content)));
  want = std::min(want, candidates.size());
  rng.shuffle(candidates.begin(), candidates.end());
  candidates.resize(want);
  std::sort(candidates.begin(), candidates.end(),
            [](const auto &a, const auto &b) { return a.first.begin > b.first.begin; });
  json subs = json::array();
  for (const auto &[w, syns] : candidates) {
    const std::string &to = syns[rng.below(syns.size())];
    subs.push_back({{"op", "substitute"}, {"from", s.substr(w.begin, w.end - w.begin)}, {"to", to}});
    s.replace(w.begin, w.end - w.begin, to);
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) out.edits.push_back(*it);
  if (reorder && rng.chance(0.5))
    if (auto r = reorder_adjunct(s, out.edits)) s = *r;
  out.text = std::move(s);
  return out;
}

std::vector<LabeledPair> gen_verbatim_pairs(const Corpus &corpus, std::size_t n, std::size_t excerpt_chars,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (utf8_length(corpus[i].text) >= excerpt_chars) eligible.push_back(i);
  if (eligible.size() < n)
    throw DataError("corpus has " + std::to_string(eligible.size()) + " documents of at least " +
                    std::to_string(excerpt_chars) + " characters; " + std::to_string(n) + " needed");
  rng.shuffle(eligible.begin(), eligible.end());
  std::vector<LabeledPair> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Document &src = corpus[eligible[k]];
    std::string_view text = src.text;
    // Byte offset of each code point so excerpts never split a character.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < text.size(); i = utf8_boundary(text, i + 1)) starts.push_back(i);
    starts.push_back(text.size());
    std::size_t cps = starts.size() - 1;
    std::size_t first = rng.below(cps - excerpt_chars + 1);
    std::size_t b = starts[first], e = starts[first + excerpt_chars];
    LabeledPair p;
    p.src = src;
    p.sus = Document{sus_id("verbatim", k), std::string(text.substr(b, e - b)), {}};
    p.label = PairLabel::Verbatim;
    p.provenance = {{"generator", "verbatim"}, {"offset", b}, {"length_chars", excerpt_chars}};
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabeledPair> gen_paraphrase_pairs(const Corpus &corpus, std::size_t n, std::size_t k_sentences,
                                              std::uint64_t seed, const Thesaurus &thesaurus, double rate) {
  Rng rng(seed);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (split_sentences(corpus[i].text).size() >= k_sentences) eligible.push_back(i);
  if (eligible.size() < n)
    throw DataError("corpus has " + std::to_string(eligible.size()) + " documents with at least " +
                    std::to_string(k_sentences) + " sentences; " + std::to_string(n) + " needed");
  rng.shuffle(eligible.begin(), eligible.end());
  std::vector<LabeledPair> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Document &src = corpus[eligible[k]];
    auto sents = sentences_of(src);
    std::size_t start = rng.below(sents.size() - k_sentences + 1);
    std::string text;
    json alignment = json::array();
    for (std::size_t j = 0; j < k_sentences; ++j) {
      auto ob = obfuscate_sentence(sents[start + j], thesaurus, rate, rng, true);
      if (j) text += ' ';
      text += ob.text;
      alignment.push_back({{"src_sentence", start + j}, {"sus_sentence", j}, {"edits", ob.edits}});
    }
    LabeledPair p;
    p.src = src;
    p.sus = Document{sus_id("paraphrase", k), std::move(text), {}};
    p.label = PairLabel::Paraphrase;
    p.provenance = {{"generator", "paraphrase"}, {"rate", rate}, {"alignment", alignment}};
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> select_central_sentences(std::span<const std::string> sentences, std::size_t count,
                                                  std::size_t min_spacing) {
  const std::size_t n = sentences.size();
  if (count == 0) return {};
  min_spacing = std::max<std::size_t>(min_spacing, 1);
  if (n == 0 || (count - 1) * min_spacing + 1 > n) throw DataError("too few sentences for the requested selection");

  // Sentence tf-idf with smooth idf over the document's sentences.
  std::vector<std::map<std::string, double>> tf(n);
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto &st : stem_sequence(sentences[i]))
      if (!is_stopword(st)) tf[i][st] += 1.0;
    for (const auto &[w, c] : tf[i]) ++df[w];
  }
  std::vector<std::map<std::string, double>> vec(n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (const auto &[w, c] : tf[i]) {
      double x = c * (std::log((1.0 + n) / (1.0 + static_cast<double>(df[w]))) + 1.0);
      vec[i][w] = x;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto &[w, x] : vec[i]) x /= norm;
  }
  std::vector<double> centrality(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double dot = 0.0;
      for (const auto &[w, x] : vec[i])
        if (auto it = vec[j].find(w); it != vec[j].end()) dot += x * it->second;
      centrality[i] += dot;
    }

  // best[i][c]: max total centrality choosing c sentences from [i, n).
  const double neg = -1e300;
  std::vector<std::vector<double>> best(n + min_spacing + 1, std::vector<double>(count + 1, neg));
  for (auto &row : best) row[0] = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t c = 1; c <= count; ++c) {
      double skip = best[i + 1][c];
      double take = best[std::min(i + min_spacing, n)][c - 1];
      take = take == neg ? neg : take + centrality[i];
      best[i][c] = std::max(skip, take);
    }
  }
  std::vector<std::size_t> chosen;
  std::size_t c = count;
  for (std::size_t i = 0; i < n && c > 0;) {
    double take = best[std::min(i + min_spacing, n)][c - 1];
    if (take != neg && take + centrality[i] >= best[i + 1][c] - 1e-12) {
      chosen.push_back(i);
      --c;
      i += min_spacing;
    } else {
      ++i;
    }
  }
  return chosen;
}

std::vector<LabeledPair> gen_idea_pairs(const Corpus &corpus, std::size_t n, std::uint64_t seed,
                                        const Thesaurus &thesaurus, double rate) {
  Rng rng(seed);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (split_sentences(corpus[i].text).size() >= 8) eligible.push_back(i);
  if (eligible.size() < n)
    throw DataError("corpus has " + std::to_string(eligible.size()) +
                    " documents with at least 8 sentences; " + std::to_string(n) + " needed");
  rng.shuffle(eligible.begin(), eligible.end());
  std::vector<LabeledPair> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Document &src = corpus[eligible[k]];
    auto sents = sentences_of(src);
    std::size_t m = (sents.size() + 3) / 4;
    auto chosen = select_central_sentences(sents, m, 3);
    std::string text;
    json alignment = json::array();
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      auto ob = obfuscate_sentence(sents[chosen[j]], thesaurus, rate, rng, false);
      if (j) text += ' ';
      text += ob.text;
      alignment.push_back({{"src_sentence", chosen[j]}, {"sus_sentence", j}, {"edits", ob.edits}});
    }
    LabeledPair p;
    p.src = src;
    p.sus = Document{sus_id("idea", k), std::move(text), {}};
    p.label = PairLabel::Idea;
    p.provenance = {{"generator", "idea"},
                    {"rate", rate},
                    {"src_sentences", sents.size()},
                    {"alignment", alignment}};
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabeledPair> gen_negative_pairs(const Corpus &corpus, std::size_t n, std::uint64_t seed,
                                            double max_cosine) {
  if (corpus.size() < 2) throw DataError("negative pairs need at least two documents");
  Rng rng(seed);
  TfidfMatrix m(corpus);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<LabeledPair> out;
  const std::size_t attempts = 200 * n + 1000;
  for (std::size_t t = 0; t < attempts && out.size() < n; ++t) {
    std::size_t i = rng.below(corpus.size()), j = rng.below(corpus.size());
    if (i == j || corpus[i].text == corpus[j].text) continue;
    if (!used.emplace(std::min(i, j), std::max(i, j)).second) continue;
    double c = m.cosine(i, j);
    if (c >= max_cosine) continue;
    LabeledPair p;
    p.src = corpus[i];
    p.sus = Document{sus_id("none", out.size()), corpus[j].text, {}};
    p.label = PairLabel::None;
    p.provenance = {{"generator", "negative"}, {"sus_source", corpus[j].id}, {"cosine", c}};
    out.push_back(std::move(p));
  }
  if (out.size() < n)
    throw DataError("corpus too homogeneous: found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                    " unrelated pairs");
  return out;
}

std::vector<LabeledPair> generate_eval_pairs(const Corpus &seed_corpus, std::size_t n, const Config &cfg) {
  std::array<std::size_t, 4> per{};
  for (std::size_t i = 0; i < 4; ++i) per[i] = n / 4 + (i < n % 4 ? 1 : 0);
  Thesaurus thesaurus = Thesaurus::load(cfg.thesaurus);
  std::vector<LabeledPair> out;
  auto append = [&](std::vector<LabeledPair> v) {
    for (auto &p : v) out.push_back(std::move(p));
  };
  append(gen_negative_pairs(seed_corpus, per[0], cfg.seed * 4 + 0, cfg.negative_max_cosine));
  append(gen_verbatim_pairs(seed_corpus, per[1], cfg.excerpt_chars, cfg.seed * 4 + 1));
  append(gen_paraphrase_pairs(seed_corpus, per[2], cfg.paraphrase_sentences, cfg.seed * 4 + 2, thesaurus,
                              cfg.paraphrase_rate));
  append(gen_idea_pairs(seed_corpus, per[3], cfg.seed * 4 + 3, thesaurus, cfg.idea_rate));
  return out;
}

PrecisionRecall precision_recall(std::span<const PairLabel> truth, std::span<const PairLabel> predicted,
                                 EvalMode mode) {
  if (truth.size() != predicted.size()) throw UsageError("truth and predictions differ in length");
  PrecisionRecall pr;
  pr.mode = mode;
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++pr.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
  const auto &m = pr.confusion;
  for (PairLabel c : {PairLabel::Verbatim, PairLabel::Paraphrase, PairLabel::Idea}) {
    auto ci = static_cast<std::size_t>(c);
    ClassScore s;
    if (mode == EvalMode::Multinomial) {
      s.tp = m[ci][ci];
      for (std::size_t t = 0; t < 4; ++t)
        if (t != ci) s.fp += m[t][ci];
      for (std::size_t p = 0; p < 4; ++p)
        if (p != ci) s.fn += m[ci][p];
    } else {
      // Pairs labeled c or None; any detection is a positive.
      for (std::size_t p = 1; p < 4; ++p) {
        s.tp += m[ci][p];
        s.fp += m[0][p];
      }
      s.fn = m[ci][0];
    }
    if (s.tp + s.fp == 0) {
      s.precision = 1.0;
      s.precision_degenerate = true;
    } else {
      s.precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
    }
    if (s.tp + s.fn == 0) {
      s.recall = 1.0;
      s.recall_degenerate = true;
    } else {
      s.recall = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
    }
    pr.per_class[c] = s;
  }
  return pr;
}

std::vector<PairLabel> PipelineDetector::predict(std::span<const LabeledPair> pairs) const {
  Corpus sources;
  for (const auto &p : pairs)
    if (!sources.contains(p.src.id)) sources.add(p.src);
  Index index = Index::build(sources, cfg_.effective_workers());
  Detector detector(sources, index, cfg_);
  std::vector<PairLabel> out(pairs.size(), PairLabel::None);
  parallel_for(pairs.size(), cfg_.effective_workers(), [&](std::size_t i) {
    auto report = detector.scan(pairs[i].sus);
    bool verbatim = false, idea = false, paraphrase = false;
    for (const auto &c : report.cases) {
      if (c.src_doc_id != pairs[i].src.id) continue;
      verbatim |= c.type == PlagiarismType::Verbatim;
      idea |= c.type == PlagiarismType::Idea;
      paraphrase |= c.type == PlagiarismType::Paraphrase;
    }
    out[i] = verbatim ? PairLabel::Verbatim : idea ? PairLabel::Idea : paraphrase ? PairLabel::Paraphrase : PairLabel::None;
  });
  return out;
}

PrecisionRecall evaluate(std::span<const LabeledPair> pairs, const PairDetector &detector, EvalMode mode) {
  if (pairs.empty()) throw UsageError("evaluation needs at least one pair");
  auto predicted = detector.predict(pairs);
  std::vector<PairLabel> truth;
  for (const auto &p : pairs) truth.push_back(p.label);
  return precision_recall(truth, predicted, mode);
}

EvalReport evaluate_both(std::span<const LabeledPair> pairs, const PairDetector &detector) {
  if (pairs.empty()) throw UsageError("evaluation needs at least one pair");
  EvalReport r;
  r.pairs = pairs.size();
  r.predicted = detector.predict(pairs);
  for (const auto &p : pairs) r.truth.push_back(p.label);
  r.binary = precision_recall(r.truth, r.predicted, EvalMode::Binary);
  r.multinomial = precision_recall(r.truth, r.predicted, EvalMode::Multinomial);
  return r;
}

json to_json(const PrecisionRecall &pr) {
  json j;
  j["mode"] = std::string(to_string(pr.mode));
  json classes = json::object();
  for (const auto &[label, s] : pr.per_class) {
    json c{{"precision", s.precision}, {"recall", s.recall}, {"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn}};
    if (s.precision_degenerate) c["precision_degenerate"] = true;
    if (s.recall_degenerate) c["recall_degenerate"] = true;
    classes[std::string(to_string(label))] = c;
  }
  j["per_class"] = classes;
  json conf = json::object();
  for (PairLabel t : kAllLabels) {
    json row = json::object();
    for (PairLabel p : kAllLabels)
      row[std::string(to_string(p))] = pr.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    conf[std::string(to_string(t))] = row;
  }
  j["confusion"] = conf;
  return j;
}

json to_json(const EvalReport &r, std::span<const LabeledPair> pairs) {
  json j;
  j["pairs"] = r.pairs;
  j["binary"] = to_json(r.binary);
  j["multinomial"] = to_json(r.multinomial);
  json preds = json::array();
  for (std::size_t i = 0; i < pairs.size() && i < r.predicted.size(); ++i)
    preds.push_back({{"sus_id", pairs[i].sus.id},
                     {"label", std::string(to_string(r.truth[i]))},
                     {"predicted", std::string(to_string(r.predicted[i]))}});
  j["predictions"] = preds;
  return j;
}

void write_pairs(std::ostream &out, std::span<const LabeledPair> pairs) {
  for (const auto &p : pairs)
    out << json{{"src_id", p.src.id}, {"sus_id", p.sus.id}, {"label", std::string(to_string(p.label))},
                {"provenance", p.provenance}}
               .dump()
        << "\n";
}

Corpus pairs_corpus(std::span<const LabeledPair> pairs) {
  Corpus c;
  for (const auto &p : pairs) {
    if (!c.contains(p.src.id)) c.add(p.src);
    if (!c.contains(p.sus.id)) c.add(p.sus);
  }
  return c;
}

std::vector<LabeledPair> read_pairs(std::istream &in, const Corpus &companion) {
  std::vector<LabeledPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (collapse_whitespace(line).empty()) continue;
    try {
      json j = json::parse(line);
      LabeledPair p;
      const Document *src = companion.find(j.at("src_id").get<std::string>());
      const Document *sus = companion.find(j.at("sus_id").get<std::string>());
      if (!src || !sus) throw DataError("pair references a document missing from the corpus");
      p.src = *src;
      p.sus = *sus;
      p.label = pair_label_from_string(j.at("label").get<std::string>());
      p.provenance = j.value("provenance", json::object());
      out.push_back(std::move(p));
    } catch (const json::exception &e) {
      throw DataError("pairs line " + std::to_string(lineno) + ": " + e.what());
    } catch (const DataError &e) {
      throw DataError("pairs line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace plagdet
