#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace plagdet {

// Half-open byte range [begin, end) into a UTF-8 document.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool overlaps(const CharSpan &o) const { return begin < o.end && o.begin < end; }
  bool contains(const CharSpan &o) const { return begin <= o.begin && o.end <= end; }
  friend bool operator==(const CharSpan &, const CharSpan &) = default;
};

struct Document {
  std::string id;
  std::string text;
  std::map<std::string, std::string> meta;
};

struct Token {
  std::string stem;
  CharSpan span;
};

// Sentence as a token range [first_token, end_token) plus its trimmed
// character extent (terminator and closing quotes included).
struct Sentence {
  std::size_t first_token = 0;
  std::size_t end_token = 0;
  CharSpan span;

  std::size_t token_count() const { return end_token - first_token; }
};

struct NormalizedDoc {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
};

}  // namespace plagdet
