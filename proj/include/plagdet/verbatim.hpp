#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plagdet/document.hpp"

namespace plagdet {

// Text with whitespace runs collapsed to one space and ends trimmed, plus the
// original byte offset of every kept byte.
struct WhitespaceNormalized {
  std::string text;
  std::vector<std::size_t> offsets;
};

WhitespaceNormalized normalize_whitespace(std::string_view text);

// Suffix array of a sequence of non-negative symbols below `alphabet`.
std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> seq, std::uint32_t alphabet);

// A common substring a[a_pos, a_pos+length) == b[b_pos, b_pos+length) that
// cannot be extended on either side.
struct MaximalMatch {
  std::size_t a_pos = 0;
  std::size_t b_pos = 0;
  std::size_t length = 0;

  friend bool operator==(const MaximalMatch &, const MaximalMatch &) = default;
  friend auto operator<=>(const MaximalMatch &, const MaximalMatch &) = default;
};

// All maximal matches of at least min_length bytes, found with a generalized
// suffix array over a#b and its LCP array. Sorted ascending.
std::vector<MaximalMatch> maximal_matches(std::string_view a, std::string_view b,
                                          std::size_t min_length);

struct VerbatimSpan {
  CharSpan src;
  CharSpan qry;
  std::size_t length_chars = 0;

  friend bool operator==(const VerbatimSpan &, const VerbatimSpan &) = default;
};

// Maps raw matches over whitespace-normalized texts back to original offsets,
// trims to code-point boundaries, keeps those of at least min_chars code
// points and removes spans nested on both sides inside another.
std::vector<VerbatimSpan> spans_from_matches(const WhitespaceNormalized &src,
                                             const WhitespaceNormalized &qry,
                                             std::span<const MaximalMatch> matches,
                                             std::size_t min_chars);

std::vector<VerbatimSpan> longest_common_substrings(const Document &src, const Document &qry,
                                                    std::size_t min_chars = 256);

}  // namespace plagdet
