#include "plagdet/classify.hpp"

#include <algorithm>
#include <cmath>

#include "plagdet/errors.hpp"
#include "plagdet/text.hpp"

namespace plagdet {

std::string_view to_string(PlagiarismType t) {
  switch (t) {
    case PlagiarismType::Verbatim: return "verbatim";
    case PlagiarismType::Paraphrase: return "paraphrase";
    case PlagiarismType::Idea: return "idea";
  }
  return "verbatim";
}

PlagiarismType plagiarism_type_from_string(std::string_view s) {
  if (s == "verbatim") return PlagiarismType::Verbatim;
  if (s == "paraphrase") return PlagiarismType::Paraphrase;
  if (s == "idea") return PlagiarismType::Idea;
  throw DataError("unknown plagiarism type '" + std::string(s) + "'");
}

double sentence_ratio(const FragmentPair &f) {
  double s = static_cast<double>(f.src_sentence_count);
  double q = static_cast<double>(f.qry_sentence_count - std::min(f.qry_sentence_count, f.qry_excluded.size()));
  if (s <= 0 || q <= 0) return 0.0;
  return std::max(s, q) / std::min(s, q);
}

namespace {

std::u32string code_points(std::string_view text) {
  std::string collapsed = collapse_whitespace(text);
  std::u32string out;
  out.reserve(collapsed.size());
  for (std::size_t i = 0; i < collapsed.size();) {
    auto b0 = static_cast<unsigned char>(collapsed[i]);
    std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 6 ? 2 : (b0 >> 4) == 14 ? 3 : (b0 >> 3) == 30 ? 4 : 1;
    len = std::min(len, collapsed.size() - i);
    char32_t cp = 0;
    for (std::size_t k = 0; k < len; ++k) cp = (cp << 8) | static_cast<unsigned char>(collapsed[i + k]);
    out.push_back(cp);
    i += len;
  }
  return out;
}

}  // namespace

double normalized_edit_distance(std::string_view a_text, std::string_view b_text, double max_distance) {
  auto a = code_points(a_text);
  auto b = code_points(b_text);
  std::size_t n = a.size(), m = b.size();
  std::size_t longest = std::max(n, m);
  if (longest == 0) return 0.0;
  auto bound = static_cast<std::size_t>(std::floor(max_distance * static_cast<double>(longest)));
  bound = std::min(bound, longest);
  std::size_t diff = n > m ? n - m : m - n;
  if (diff > bound) return static_cast<double>(diff) / static_cast<double>(longest);

  // Banded DP over |i - j| <= bound; cells outside the band act as infinity.
  const std::size_t inf = longest + 1;
  std::vector<std::size_t> prev(m + 1, inf), cur(m + 1, inf);
  for (std::size_t j = 0; j <= std::min(m, bound); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t lo = i > bound ? i - bound : 0;
    std::size_t hi = std::min(m, i + bound);
    std::fill(cur.begin(), cur.end(), inf);
    std::size_t row_min = inf;
    if (lo == 0) {
      cur[0] = i;
      row_min = i;
    }
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
      std::size_t best = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      best = std::min(best, prev[j] + 1);
      best = std::min(best, cur[j - 1] + 1);
      cur[j] = std::min(best, inf);
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > bound) return static_cast<double>(row_min) / static_cast<double>(longest);
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(longest);
}

bool near_duplicate_guard(const FragmentPair &f, const Document &src, const Document &qry,
                          double max_distance) {
  std::string_view s = std::string_view(src.text).substr(f.src_span.begin, f.src_span.size());
  std::string_view q = std::string_view(qry.text).substr(f.qry_span.begin, f.qry_span.size());
  return normalized_edit_distance(s, q, max_distance) <= max_distance;
}

std::optional<PlagiarismCase> classify(const FragmentPair &fragment,
                                       std::span<const VerbatimSpan> verbatim_spans,
                                       const ValidationOutcome &validation,
                                       const ClassifyParams &params, bool near_duplicate) {
  PlagiarismCase c;
  c.src_span = fragment.src_span;
  c.qry_span = fragment.qry_span;
  c.fragment = fragment;
  double ratio = sentence_ratio(fragment);
  bool condensed = ratio >= params.ratio_threshold;

  std::size_t longest = 0;
  for (const auto &v : verbatim_spans)
    if (v.length_chars >= params.verbatim_min_chars && v.qry.overlaps(fragment.qry_span))
      longest = std::max(longest, v.length_chars);
  if (longest > 0) {
    c.type = PlagiarismType::Verbatim;
    c.evidence.verbatim_char_len = longest;
    c.evidence.sentence_ratio = ratio;
    if (condensed && validation.accepted) c.evidence.flags.push_back("idea_signal");
    return c;
  }
  if (near_duplicate || !validation.accepted) return std::nullopt;

  c.type = condensed ? PlagiarismType::Idea : PlagiarismType::Paraphrase;
  c.evidence.best_paraphrase_prob = validation.best_prob;
  c.evidence.sentence_ratio = ratio;
  c.evidence.matched_sentence_pair = validation.matched_sentence_pair;
  c.evidence.accepting_pairs = validation.accepting_pairs;
  c.evidence.pruned_quoted_sentences = validation.pruned_quoted_sentences;
  return c;
}

PlagiarismCase verbatim_case(const VerbatimSpan &span) {
  PlagiarismCase c;
  c.type = PlagiarismType::Verbatim;
  c.src_span = span.src;
  c.qry_span = span.qry;
  c.verbatim = span;
  c.evidence.verbatim_char_len = span.length_chars;
  return c;
}

}  // namespace plagdet
