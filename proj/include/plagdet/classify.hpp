#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plagdet/align.hpp"
#include "plagdet/validators.hpp"
#include "plagdet/verbatim.hpp"

namespace plagdet {

enum class PlagiarismType { Verbatim, Paraphrase, Idea };

std::string_view to_string(PlagiarismType t);
// Throws DataError for anything but "verbatim", "paraphrase", "idea".
PlagiarismType plagiarism_type_from_string(std::string_view s);

struct Evidence {
  std::optional<std::size_t> verbatim_char_len;
  std::optional<double> best_paraphrase_prob;
  std::optional<double> sentence_ratio;
  std::optional<std::pair<std::size_t, std::size_t>> matched_sentence_pair;
  std::size_t accepting_pairs = 0;
  std::size_t pruned_quoted_sentences = 0;
  // "idea_signal" when a verbatim case also shows a condensation ratio.
  std::vector<std::string> flags;
};

struct PlagiarismCase {
  PlagiarismType type = PlagiarismType::Verbatim;
  std::string src_doc_id;
  CharSpan src_span;
  CharSpan qry_span;
  // Sentence extents; absent for cases built from a bare verbatim span.
  std::optional<FragmentPair> fragment;
  std::optional<VerbatimSpan> verbatim;
  Evidence evidence;
  std::string qry_text;
};

struct ClassifyParams {
  double ratio_threshold = 2.0;
  std::size_t verbatim_min_chars = 256;
};

// max(src, qry) / min(src, qry) over remaining sentences.
double sentence_ratio(const FragmentPair &f);

// Normalized code-point Levenshtein distance after whitespace collapsing.
// Returns a value above max_distance as soon as the bound is exceeded.
double normalized_edit_distance(std::string_view a, std::string_view b, double max_distance = 1.0);

// Both sides differ by at most max_distance normalized edits.
bool near_duplicate_guard(const FragmentPair &f, const Document &src, const Document &qry,
                          double max_distance = 0.02);

// Verbatim when the query side overlaps a qualifying span; near-duplicates
// without such a span are rejected; otherwise Idea or Paraphrase when the
// validation accepted, Reject (nullopt) when it did not.
std::optional<PlagiarismCase> classify(const FragmentPair &fragment,
                                       std::span<const VerbatimSpan> verbatim_spans,
                                       const ValidationOutcome &validation,
                                       const ClassifyParams &params = {},
                                       bool near_duplicate = false);

PlagiarismCase verbatim_case(const VerbatimSpan &span);

}  // namespace plagdet
