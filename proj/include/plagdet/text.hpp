#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "plagdet/document.hpp"

namespace plagdet {

// A surface token: lowercased text and its byte span in the source.
struct SurfaceToken {
  std::string text;
  CharSpan span;
};

// Splits text into word tokens. Word characters are letters and digits
// (any non-punctuation code point outside ASCII counts as a letter). Digits
// joined by '.' or ',' stay one token ("4.5", "2,000"); letters joined by an
// apostrophe stay one token ("don't"). Output is lowercased.
std::vector<SurfaceToken> tokenize(std::string_view text);

// Sentence extents over the raw text. A sentence ends at [.?!] followed by
// optional closing quotes/brackets, whitespace, then an uppercase letter or
// digit (after optional opening quotes), unless the word before '.' is a
// known abbreviation. A blank line always ends a sentence.
std::vector<CharSpan> split_sentences(std::string_view text);

// Lowercase, tokenize, stem. Sentences without tokens are dropped.
NormalizedDoc normalize(const Document &doc);

// Stems of a free-standing string, in order.
std::vector<std::string> stem_sequence(std::string_view text);

// Stem of an already lowercased surface token.
std::string stem_token(std::string_view lowered);

bool is_stopword(std::string_view word);

std::string to_lower(std::string_view text);

// Number of code points.
std::size_t utf8_length(std::string_view text);

// Collapse runs of whitespace to one space and trim the ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace plagdet
