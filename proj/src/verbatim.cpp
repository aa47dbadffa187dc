#include "plagdet/verbatim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "plagdet/errors.hpp"
#include "plagdet/kernels.hpp"
#include "plagdet/text.hpp"

namespace plagdet {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

}  // namespace

WhitespaceNormalized normalize_whitespace(std::string_view text) {
  WhitespaceNormalized out;
  out.text.reserve(text.size());
  out.offsets.reserve(text.size());
  std::size_t pending = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_ws(text[i])) {
      if (pending == std::string_view::npos && !out.text.empty()) pending = i;
      continue;
    }
    if (pending != std::string_view::npos) {
      out.text.push_back(' ');
      out.offsets.push_back(pending);
      pending = std::string_view::npos;
    }
    out.text.push_back(text[i]);
    out.offsets.push_back(i);
  }
  return out;
}

// Prefix doubling with two counting-sort passes per round.
std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> seq, std::uint32_t alphabet) {
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> sa(n), rank(seq.begin(), seq.end()), tmp(n), key2(n);
  if (n == 0) return sa;
  std::vector<std::uint32_t> count(std::max<std::size_t>(alphabet, n) + 2);

  auto counting_sort = [&](const std::vector<std::uint32_t> &in_order,
                           const std::vector<std::uint32_t> &key, std::size_t buckets,
                           std::vector<std::uint32_t> &out_order) {
    std::fill(count.begin(), count.begin() + static_cast<std::ptrdiff_t>(buckets + 1), 0);
    for (auto i : in_order) ++count[key[i] + 1];
    for (std::size_t b = 1; b <= buckets; ++b) count[b] += count[b - 1];
    for (auto i : in_order) out_order[count[key[i]]++] = i;
  };

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  counting_sort(order, rank, alphabet, sa);
  std::size_t classes = alphabet;
  for (std::size_t k = 1;; k <<= 1) {
    // Second key: rank of suffix i+k, or 0 (shorter suffix sorts first) past the end.
    for (std::size_t i = 0; i < n; ++i) key2[i] = i + k < n ? rank[i + k] + 1 : 0;
    counting_sort(sa, key2, classes + 1, order);
    counting_sort(order, rank, classes, sa);
    tmp[sa[0]] = 0;
    std::uint32_t c = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (rank[sa[i]] != rank[sa[i - 1]] || key2[sa[i]] != key2[sa[i - 1]]) ++c;
      tmp[sa[i]] = c;
    }
    rank.swap(tmp);
    classes = c + 1;
    if (classes == n) break;
  }
  return sa;
}

std::vector<MaximalMatch> maximal_matches(std::string_view a, std::string_view b,
                                          std::size_t min_length) {
  if (min_length == 0) throw UsageError("min_length must be at least 1");
  std::vector<MaximalMatch> out;
  if (a.size() < min_length || b.size() < min_length) return out;

  // Symbols: bytes shifted by 2, separator 1, terminator 0.
  const std::size_t n = a.size() + b.size() + 2;
  std::vector<std::uint32_t> seq;
  seq.reserve(n);
  for (char c : a) seq.push_back(static_cast<unsigned char>(c) + 2u);
  seq.push_back(1);
  for (char c : b) seq.push_back(static_cast<unsigned char>(c) + 2u);
  seq.push_back(0);
  auto sa = suffix_array(seq, 258);

  std::string joined;
  joined.reserve(n);
  joined.append(a).push_back('\0');
  joined.append(b).push_back('\0');
  const auto *bytes = reinterpret_cast<const std::uint8_t *>(joined.data());
  const std::size_t b_start = a.size() + 1;
  // Bytes remaining before the separator or terminator.
  auto limit = [&](std::size_t p) -> std::size_t {
    if (p < a.size()) return a.size() - p;
    if (p >= b_start && p < b_start + b.size()) return b_start + b.size() - p;
    return 0;
  };

  // Kasai: lcp[r] = LCP(sa[r-1], sa[r]).
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::uint32_t>(r);
  std::size_t h = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (rank[p] == 0) {
      h = 0;
      continue;
    }
    std::size_t q = sa[rank[p] - 1];
    std::size_t lp = limit(p), lq = limit(q);
    if (h > std::min(lp, lq)) h = std::min(lp, lq);
    h += kernels::common_prefix({bytes + p + h, lp - h}, {bytes + q + h, lq - h});
    lcp[rank[p]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }

  auto left_maximal = [&](std::size_t pa, std::size_t pb) {
    return pa == 0 || pb == b_start || joined[pa - 1] != joined[pb - 1];
  };

  std::size_t r = 1;
  while (r < n) {
    if (lcp[r] < min_length) {
      ++r;
      continue;
    }
    std::size_t lo = r - 1, hi = r;
    while (hi + 1 < n && lcp[hi + 1] >= min_length) ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t run = std::numeric_limits<std::size_t>::max();
      for (std::size_t j = i + 1; j <= hi; ++j) {
        run = std::min<std::size_t>(run, lcp[j]);
        std::size_t pi = sa[i], pj = sa[j];
        bool i_in_a = pi < a.size(), j_in_a = pj < a.size();
        if (i_in_a == j_in_a) continue;
        std::size_t pa = i_in_a ? pi : pj;
        std::size_t pb = i_in_a ? pj : pi;
        if (left_maximal(pa, pb)) out.push_back({pa, pb - b_start, run});
      }
    }
    r = hi + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VerbatimSpan> spans_from_matches(const WhitespaceNormalized &src,
                                             const WhitespaceNormalized &qry,
                                             std::span<const MaximalMatch> matches,
                                             std::size_t min_chars) {
  std::vector<VerbatimSpan> spans;
  for (const auto &m : matches) {
    std::size_t a = m.a_pos, b = m.b_pos, len = m.length;
    // Both sides hold identical bytes, so boundary trimming is symmetric.
    while (len > 0 && is_continuation(src.text[a])) {
      ++a;
      ++b;
      --len;
    }
    while (len > 0 && a + len < src.text.size() && is_continuation(src.text[a + len])) {
      --len;
      while (len > 0 && is_continuation(src.text[a + len])) --len;
    }
    if (len == 0) continue;
    std::size_t chars = utf8_length(std::string_view(src.text).substr(a, len));
    if (chars < min_chars) continue;
    VerbatimSpan s;
    s.src = {src.offsets[a], src.offsets[a + len - 1] + 1};
    s.qry = {qry.offsets[b], qry.offsets[b + len - 1] + 1};
    s.length_chars = chars;
    spans.push_back(s);
  }
  std::vector<VerbatimSpan> kept;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    bool nested = false;
    for (std::size_t j = 0; j < spans.size() && !nested; ++j) {
      if (i == j || spans[i] == spans[j]) continue;
      nested = spans[j].src.contains(spans[i].src) && spans[j].qry.contains(spans[i].qry);
    }
    if (!nested && std::find(kept.begin(), kept.end(), spans[i]) == kept.end()) kept.push_back(spans[i]);
  }
  return kept;
}

std::vector<VerbatimSpan> longest_common_substrings(const Document &src, const Document &qry,
                                                    std::size_t min_chars) {
  if (min_chars == 0) throw UsageError("min_chars must be at least 1");
  auto ns = normalize_whitespace(src.text);
  auto nq = normalize_whitespace(qry.text);
  auto matches = maximal_matches(ns.text, nq.text, min_chars);
  return spans_from_matches(ns, nq, matches, min_chars);
}

}  // namespace plagdet
