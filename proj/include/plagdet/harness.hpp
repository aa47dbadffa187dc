#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plagdet/config.hpp"
#include "plagdet/corpus.hpp"
#include "plagdet/rng.hpp"

namespace plagdet {

enum class PairLabel { None, Verbatim, Paraphrase, Idea };
inline constexpr std::array kAllLabels = {PairLabel::None, PairLabel::Verbatim, PairLabel::Paraphrase,
                                          PairLabel::Idea};

std::string_view to_string(PairLabel label);
PairLabel pair_label_from_string(std::string_view s);

struct LabeledPair {
  Document src;
  Document sus;
  PairLabel label = PairLabel::None;
  nlohmann::json provenance;
};

class Thesaurus {
 public:
  Thesaurus() = default;
  explicit Thesaurus(std::map<std::string, std::vector<std::string>> entries);
  // Lines "word: syn, syn"; '#' starts a comment. Repeated heads merge.
  static Thesaurus load(const std::string &path);

  // Synonyms of a lowercase word. Regular plurals of listed nouns resolve
  // to pluralized synonyms. Empty when unknown.
  std::vector<std::string> synonyms(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

struct Obfuscation {
  std::string text;
  nlohmann::json edits = nlohmann::json::array();
};

// Replaces round(rate * content words) lowercase content words that have
// synonyms, then optionally moves a leading or trailing adjunct phrase to
// the other end of the sentence.
Obfuscation obfuscate_sentence(std::string_view sentence, const Thesaurus &thesaurus, double rate, Rng &rng,
                               bool reorder);

std::vector<LabeledPair> gen_verbatim_pairs(const Corpus &corpus, std::size_t n, std::size_t excerpt_chars,
                                            std::uint64_t seed);
std::vector<LabeledPair> gen_paraphrase_pairs(const Corpus &corpus, std::size_t n, std::size_t k_sentences,
                                              std::uint64_t seed, const Thesaurus &thesaurus,
                                              double rate = 0.30);
std::vector<LabeledPair> gen_idea_pairs(const Corpus &corpus, std::size_t n, std::uint64_t seed,
                                        const Thesaurus &thesaurus, double rate = 0.15);
std::vector<LabeledPair> gen_negative_pairs(const Corpus &corpus, std::size_t n, std::uint64_t seed,
                                            double max_cosine = 0.2);

// Indices of the ceil(25%) most central sentences (summed tf-idf cosine to
// the others) subject to a minimum index spacing, maximizing total
// centrality; ties go to earlier sentences. Returned ascending.
std::vector<std::size_t> select_central_sentences(std::span<const std::string> sentences,
                                                  std::size_t count, std::size_t min_spacing = 3);

// n pairs split evenly over the four labels (None, Verbatim, Paraphrase,
// Idea; the remainder goes to the earlier labels).
std::vector<LabeledPair> generate_eval_pairs(const Corpus &seed_corpus, std::size_t n, const Config &cfg);

enum class EvalMode { Binary, Multinomial };
std::string_view to_string(EvalMode mode);

// confusion[truth][predicted], indexed by PairLabel.
using Confusion = std::array<std::array<std::size_t, 4>, 4>;

struct ClassScore {
  double precision = 1.0;
  double recall = 1.0;
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  std::size_t tp = 0, fp = 0, fn = 0;
};

struct PrecisionRecall {
  EvalMode mode = EvalMode::Multinomial;
  std::map<PairLabel, ClassScore> per_class;  // Verbatim, Paraphrase, Idea
  Confusion confusion{};
};

PrecisionRecall precision_recall(std::span<const PairLabel> truth, std::span<const PairLabel> predicted,
                                 EvalMode mode);

class PairDetector {
 public:
  virtual ~PairDetector() = default;
  virtual std::vector<PairLabel> predict(std::span<const LabeledPair> pairs) const = 0;
};

// Full pipeline over one index of all source documents. Only cases against
// the paired source count; the label is Verbatim over Idea over Paraphrase.
class PipelineDetector final : public PairDetector {
 public:
  explicit PipelineDetector(Config cfg) : cfg_(std::move(cfg)) {}
  std::vector<PairLabel> predict(std::span<const LabeledPair> pairs) const override;

 private:
  Config cfg_;
};

PrecisionRecall evaluate(std::span<const LabeledPair> pairs, const PairDetector &detector, EvalMode mode);

struct EvalReport {
  std::size_t pairs = 0;
  std::vector<PairLabel> truth;
  std::vector<PairLabel> predicted;
  PrecisionRecall binary;
  PrecisionRecall multinomial;
};

EvalReport evaluate_both(std::span<const LabeledPair> pairs, const PairDetector &detector);

nlohmann::json to_json(const PrecisionRecall &pr);
nlohmann::json to_json(const EvalReport &r, std::span<const LabeledPair> pairs);

// {"src_id", "sus_id", "label", "provenance"} per line.
void write_pairs(std::ostream &out, std::span<const LabeledPair> pairs);
// Every source and suspicious document, each id once.
Corpus pairs_corpus(std::span<const LabeledPair> pairs);
std::vector<LabeledPair> read_pairs(std::istream &in, const Corpus &companion);

}  // namespace plagdet
