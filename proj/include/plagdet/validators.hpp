#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plagdet/align.hpp"
#include "plagdet/document.hpp"
#include "plagdet/entities.hpp"

namespace plagdet {

class ServiceClient;

struct ValidationOutcome {
  bool accepted = false;
  // Score of the recorded pair: the best accepting pair, or the highest
  // scoring pair when nothing was accepted.
  double best_prob = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> matched_sentence_pair;
  bool entity_match = false;
  std::size_t pruned_quoted_sentences = 0;
  std::size_t accepting_pairs = 0;
  std::size_t pairs_scored = 0;
};

class ParaphraseScorer {
 public:
  virtual ~ParaphraseScorer() = default;
  virtual double score(std::string_view a, std::string_view b) const = 0;
};

struct LexicalWeights {
  double jaccard = 0.5;
  double cosine = 0.3;
  double order = 0.2;
};

// Non-stopword stems of a sentence (all stems when every one is a stopword).
std::vector<std::string> content_stems(std::span<const std::string> stems);

// 0.5 * Jaccard(stem sets) + 0.3 * tf-idf cosine + 0.2 * (1 - fraction of
// discordant pairs among shared stems ordered by first occurrence).
class BuiltinLexicalScorer final : public ParaphraseScorer {
 public:
  explicit BuiltinLexicalScorer(IdfFn idf = {}, LexicalWeights weights = {});

  double score(std::string_view a, std::string_view b) const override;
  // Same score from pre-stemmed sentences.
  double score_stems(std::span<const std::string> a, std::span<const std::string> b) const;

  const LexicalWeights &weights() const { return weights_; }

 private:
  IdfFn idf_;
  LexicalWeights weights_;
};

double builtin_paraphrase_score(std::string_view a, std::string_view b);

// Kendall-style order divergence of the shared items: 1 when nothing is
// shared, 0 for a single shared item.
double order_divergence(std::span<const std::string> a, std::span<const std::string> b);

// POST /v1/paraphrase {"a", "b"} -> {"score"}.
class ExternalParaphraseScorer final : public ParaphraseScorer {
 public:
  explicit ExternalParaphraseScorer(const ServiceClient &client) : client_(client) {}
  double score(std::string_view a, std::string_view b) const override;

 private:
  const ServiceClient &client_;
};

// POST /v1/entities {"text"} -> {"entities": [{"kind", "text"}]}.
class ExternalEntityExtractor final : public EntityExtractor {
 public:
  explicit ExternalEntityExtractor(const ServiceClient &client) : client_(client) {}
  EntitySet extract(std::string_view sentence) const override;

 private:
  const ServiceClient &client_;
};

// Byte ranges [open quote, one past close quote) of matched double quotes.
std::vector<CharSpan> quoted_regions(std::string_view text);

// Whether a sentence lies inside one quoted region, allowing terminal
// punctuation after the closing quote.
bool is_quoted_sentence(std::string_view text, const CharSpan &sentence,
                        std::span<const CharSpan> regions);

// Removes fully quoted query sentences from the fragment. The query span is
// recomputed over the remaining sentences and qry_chars counts only them.
// Returns nullopt when fewer than min_chars code points remain.
std::optional<FragmentPair> strip_quoted(FragmentPair fragment, const Document &qry,
                                         const NormalizedDoc &qry_nd, std::size_t min_chars = 150);
std::optional<FragmentPair> strip_quoted(FragmentPair fragment, const Document &qry,
                                         std::size_t min_chars = 150);

struct ValidationBand {
  double lower = 0.5;
  double upper = 0.99;
  bool contains(double s) const { return s > lower && s < upper; }
};

// Accepts when some (src, qry) sentence pair inside the fragment scores in
// the open band and has equal entity sets. Scorer failures propagate.
ValidationOutcome validate(const FragmentPair &fragment, const Document &src,
                           const NormalizedDoc &src_nd, const Document &qry,
                           const NormalizedDoc &qry_nd, const ParaphraseScorer &scorer,
                           const EntityExtractor &extractor, const ValidationBand &band = {});

}  // namespace plagdet
