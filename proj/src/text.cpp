#include "plagdet/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "plagdet/kernels.hpp"
#include "plagdet/porter.hpp"

namespace plagdet {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint decode(std::string_view s, std::size_t i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    auto b = static_cast<unsigned char>(s[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if ((b0 & 0xE0) == 0xC0) {
    int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0)
      return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
  } else if ((b0 & 0xF8) == 0xF0) {
    int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0)
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), 4};
  }
  // Invalid sequence: treat the byte as an opaque symbol.
  return {0xFFFD, 1};
}

void encode(char32_t cp, std::string &out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
         c == 0xA0 || c == 0x2028 || c == 0x2029 || c == 0x3000 || (c >= 0x2000 && c <= 0x200A);
}

bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c) || is_ascii_digit(c);
  if (c == 0xFFFD) return false;
  if (c >= 0xA0 && c <= 0xBF) return false;  // Latin-1 punctuation and symbols
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // general punctuation, symbols, arrows
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0x1F000) return false;  // emoji and pictographs
  return true;
}

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

char32_t lower_cp(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

bool is_upper_start(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7) ||
         (c >= 0x391 && c <= 0x3A9) || (c >= 0x400 && c <= 0x42F);
}

bool is_closing(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == 0x201D || c == 0x2019 ||
         c == 0xBB;
}

bool is_opening(char32_t c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == 0x201C || c == 0x2018 ||
         c == 0xAB;
}

const std::unordered_set<std::string_view> &abbreviations() {
  static const std::unordered_set<std::string_view> set = {
      "mr",   "mrs",  "ms",   "dr",   "prof", "st",  "jr",  "sr",   "vs",  "etc",
      "inc",  "ltd",  "co",   "corp", "fig",  "no",  "vol", "gen",  "gov", "sen",
      "rep",  "rev",  "capt", "col",  "lt",   "sgt", "mt",  "ave",  "dept", "approx",
      "jan",  "feb",  "mar",  "apr",  "jun",  "jul", "aug", "sep",  "sept", "oct",
      "nov",  "dec",  "e.g",  "i.e",  "u.s",  "u.k", "a.m", "p.m",  "cf",  "al"};
  return set;
}

// Lowercased run of letters and inner dots ending right before `dot`.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0) {
    char c = text[start - 1];
    bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    bool inner_dot = c == '.' && start >= 2 && start < dot;
    if (!letter && !inner_dot) break;
    --start;
  }
  return to_lower(text.substr(start, dot - start));
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  kernels::ascii_lower(out);
  bool ascii = std::all_of(out.begin(), out.end(),
                           [](char c) { return static_cast<unsigned char>(c) < 0x80; });
  if (ascii) return out;
  std::string folded;
  folded.reserve(out.size());
  for (std::size_t i = 0; i < out.size();) {
    CodePoint cp = decode(out, i);
    if (cp.value == 0xFFFD && cp.length == 1)
      folded.push_back(out[i]);
    else
      encode(lower_cp(cp.value), folded);
    i += cp.length;
  }
  return folded;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  for (char c : text)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::vector<SurfaceToken> tokenize(std::string_view text) {
  std::vector<SurfaceToken> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    CodePoint cp = decode(text, i);
    if (!is_word_char(cp.value)) {
      i += cp.length;
      continue;
    }
    SurfaceToken tok;
    tok.span.begin = i;
    char32_t prev = 0;
    while (i < text.size()) {
      CodePoint cur = decode(text, i);
      if (is_word_char(cur.value)) {
        encode(lower_cp(cur.value), tok.text);
        prev = cur.value;
        i += cur.length;
        continue;
      }
      // Joiners only count when flanked by the right character classes.
      if (i + cur.length < text.size()) {
        CodePoint next = decode(text, i + cur.length);
        bool numeric = (cur.value == '.' || cur.value == ',') && is_ascii_digit(prev) &&
                       is_ascii_digit(next.value);
        bool elision = is_apostrophe(cur.value) && is_word_char(prev) &&
                       !is_ascii_digit(prev) && is_word_char(next.value) &&
                       !is_ascii_digit(next.value);
        if (numeric || elision) {
          tok.text.push_back(numeric ? static_cast<char>(cur.value) : '\'');
          i += cur.length;
          continue;
        }
      }
      break;
    }
    tok.span.end = i;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<CharSpan> split_sentences(std::string_view text) {
  std::vector<CharSpan> out;
  auto skip_space = [&](std::size_t p) {
    while (p < text.size()) {
      CodePoint cp = decode(text, p);
      if (!is_space(cp.value)) break;
      p += cp.length;
    }
    return p;
  };
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (end > begin) {
      std::size_t back = end - 1;
      while (back > begin && (static_cast<unsigned char>(text[back]) & 0xC0) == 0x80) --back;
      if (!is_space(decode(text, back).value)) break;
      end = back;
    }
    if (end > begin) out.push_back({begin, end});
  };

  std::size_t start = skip_space(0);
  std::size_t i = start;
  while (i < text.size()) {
    CodePoint cp = decode(text, i);
    if (cp.value == '\n') {
      // Blank line: newline, optional horizontal space, newline.
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        emit(start, i);
        start = skip_space(j);
        i = start;
        continue;
      }
    }
    if (cp.value != '.' && cp.value != '?' && cp.value != '!') {
      i += cp.length;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) ++j;
    bool single_dot = (j == i + 1 && cp.value == '.');
    while (j < text.size()) {
      CodePoint c = decode(text, j);
      if (!is_closing(c.value)) break;
      j += c.length;
    }
    if (j >= text.size()) break;
    CodePoint after = decode(text, j);
    if (!is_space(after.value)) {
      i = j;
      continue;
    }
    std::size_t k = skip_space(j);
    while (k < text.size()) {
      CodePoint c = decode(text, k);
      if (!is_opening(c.value)) break;
      k += c.length;
    }
    bool boundary = false;
    if (k < text.size()) {
      CodePoint next = decode(text, k);
      boundary = is_upper_start(next.value) || is_ascii_digit(next.value);
    }
    if (boundary && single_dot && abbreviations().contains(word_before(text, i))) boundary = false;
    if (boundary) {
      emit(start, j);
      start = skip_space(j);
      i = start;
    } else {
      i = j;
    }
  }
  emit(start, text.size());
  return out;
}

bool is_stopword(std::string_view word) {
  static const std::unordered_set<std::string_view> words = {
      "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
      "an",      "and",     "ani",    "any",     "are",    "as",      "at",      "be",
      "becaus",  "because", "been",   "befor",   "before", "being",   "below",   "between",
      "both",    "but",     "by",     "can",     "could",  "did",     "do",      "doe",
      "does",    "doing",   "down",   "dure",    "during", "each",    "few",     "for",
      "from",    "further", "had",    "ha",      "has",    "have",    "having",  "he",
      "her",     "here",    "hers",   "herself", "him",    "himself", "hi",      "his",
      "how",     "i",       "if",     "in",      "into",   "is",      "it",      "its",
      "itself",  "just",    "me",     "more",    "most",   "my",      "myself",  "no",
      "nor",     "not",     "now",    "of",      "off",    "on",      "onc",     "once",
      "onli",    "only",    "or",     "other",   "our",    "ours",    "ourselv", "out",
      "over",    "own",     "same",   "she",     "should", "so",      "some",    "such",
      "than",    "that",    "the",    "their",   "theirs", "them",    "themselv", "then",
      "there",   "these",   "thei",   "they",    "thi",    "this",    "those",   "through",
      "to",      "too",     "under",  "until",   "up",     "veri",    "very",    "wa",
      "was",     "we",      "were",   "what",    "when",   "where",   "which",   "while",
      "who",     "whom",    "why",    "will",    "with",   "would",   "you",     "your",
      "yours",   "yourself", "yourselv", "also",  "mai",    "may",     "might",   "must",
      "shall",   "upon",    "whether", "within", "without", "yet",    "among",   "amongst"};
  return words.contains(word);
}

std::string stem_token(std::string_view lowered) {
  std::string_view w = lowered;
  if (w.size() > 2 && (w.ends_with("'s"))) w.remove_suffix(2);
  bool alpha = !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
  if (!alpha) return std::string(w);
  return porter_stem(w);
}

std::vector<std::string> stem_sequence(std::string_view text) {
  std::vector<std::string> out;
  for (auto &tok : tokenize(text)) out.push_back(stem_token(tok.text));
  return out;
}

NormalizedDoc normalize(const Document &doc) {
  NormalizedDoc nd;
  nd.doc_id = doc.id;
  auto surface = tokenize(doc.text);
  nd.tokens.reserve(surface.size());
  for (auto &tok : surface) nd.tokens.push_back({stem_token(tok.text), tok.span});

  std::size_t t = 0;
  for (const CharSpan &s : split_sentences(doc.text)) {
    Sentence sent;
    sent.span = s;
    sent.first_token = t;
    while (t < nd.tokens.size() && nd.tokens[t].span.begin < s.end) ++t;
    sent.end_token = t;
    if (sent.token_count() > 0) nd.sentences.push_back(sent);
  }
  return nd;
}

}  // namespace plagdet
