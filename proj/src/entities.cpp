#include "plagdet/entities.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <vector>

#include "plagdet/errors.hpp"
#include "plagdet/text.hpp"

namespace plagdet {
namespace {

bool alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Raw word: maximal run of letters/digits with '.'/',' between digits.
struct Word {
  std::size_t begin, end;
  std::string raw;
  bool consumed = false;
};

std::vector<Word> words_of(std::string_view s) {
  std::vector<Word> out;
  for (const auto &t : tokenize(s)) out.push_back({t.span.begin, t.span.end, std::string(s.substr(t.span.begin, t.span.size()))});
  return out;
}

std::optional<int> month_index(std::string_view w) {
  static constexpr std::array<std::string_view, 12> full = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  static constexpr std::array<std::string_view, 12> abbr = {"jan", "feb", "mar", "apr", "may", "jun",
                                                            "jul", "aug", "sep", "oct", "nov", "dec"};
  if (w.empty() || !std::isupper(static_cast<unsigned char>(w[0]))) return std::nullopt;
  std::string lw = to_lower(w);
  for (int i = 0; i < 12; ++i)
    if (lw == full[i] || (lw == abbr[i] && lw != "may") || lw == "sept") return i;
  return std::nullopt;
}

bool is_day(std::string_view w) {
  if (w.empty() || w.size() > 2) return false;
  for (char c : w)
    if (!digit(c)) return false;
  int d = std::stoi(std::string(w));
  return d >= 1 && d <= 31;
}

bool is_year(std::string_view w) {
  return w.size() == 4 && digit(w[0]) && digit(w[1]) && digit(w[2]) && digit(w[3]);
}

std::string normalized(std::string_view s) { return to_lower(collapse_whitespace(s)); }

// Only whitespace between two positions.
bool only_space(std::string_view s, std::size_t a, std::size_t b) {
  for (std::size_t i = a; i < b; ++i)
    if (!std::isspace(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool only_space_or_comma(std::string_view s, std::size_t a, std::size_t b) {
  int commas = 0;
  for (std::size_t i = a; i < b; ++i) {
    if (s[i] == ',') {
      ++commas;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(s[i]))) return false;
  }
  return commas <= 1;
}

void mark(std::vector<bool> &used, std::size_t a, std::size_t b) {
  for (std::size_t i = a; i < b; ++i) used[i] = true;
}

bool any_used(const std::vector<bool> &used, std::size_t a, std::size_t b) {
  for (std::size_t i = a; i < b; ++i)
    if (used[i]) return true;
  return false;
}

void scan_urls(std::string_view s, std::vector<bool> &used, EntitySet &out) {
  for (std::string_view prefix : {"https://", "http://", "www."}) {
    std::size_t pos = 0;
    while ((pos = s.find(prefix, pos)) != std::string_view::npos) {
      if (any_used(used, pos, pos + prefix.size()) || (pos > 0 && alnum(s[pos - 1]))) {
        pos += prefix.size();
        continue;
      }
      std::size_t end = pos + prefix.size();
      while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) && s[end] != '"' &&
             s[end] != '<' && s[end] != '>')
        ++end;
      while (end > pos + prefix.size() && std::string_view(".,;:!?)'\"").find(s[end - 1]) != std::string_view::npos)
        --end;
      if (end > pos + prefix.size()) {
        out.insert({EntityKind::Url, normalized(s.substr(pos, end - pos))});
        mark(used, pos, end);
      }
      pos = end;
    }
  }
}

void scan_emails(std::string_view s, std::vector<bool> &used, EntitySet &out) {
  auto local_char = [](char c) { return alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-'; };
  auto domain_char = [](char c) { return alnum(c) || c == '.' || c == '-'; };
  for (std::size_t at = s.find('@'); at != std::string_view::npos; at = s.find('@', at + 1)) {
    if (used[at]) continue;
    std::size_t b = at;
    while (b > 0 && local_char(s[b - 1])) --b;
    while (b < at && s[b] == '.') ++b;
    std::size_t e = at + 1;
    while (e < s.size() && domain_char(s[e])) ++e;
    while (e > at + 1 && (s[e - 1] == '.' || s[e - 1] == '-')) --e;
    if (b == at || e == at + 1) continue;
    std::string_view domain = s.substr(at + 1, e - at - 1);
    std::size_t dot = domain.rfind('.');
    if (dot == std::string_view::npos || domain.size() - dot - 1 < 2) continue;
    bool tld_alpha = true;
    for (char c : domain.substr(dot + 1)) tld_alpha = tld_alpha && alpha(c);
    if (!tld_alpha) continue;
    out.insert({EntityKind::Email, normalized(s.substr(b, e - b))});
    mark(used, b, e);
  }
}

// YYYY-MM-DD and D/M/YYYY (or M/D/YY) forms.
void scan_numeric_dates(std::string_view s, std::vector<bool> &used, EntitySet &out) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (!digit(s[i]) || (i > 0 && (alnum(s[i - 1]) || s[i - 1] == '/' || s[i - 1] == '-')) || used[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::vector<std::string_view> parts;
    char sep = 0;
    std::size_t part_start = i;
    while (j < s.size()) {
      if (digit(s[j])) {
        ++j;
        continue;
      }
      if ((s[j] == '-' || s[j] == '/') && j + 1 < s.size() && digit(s[j + 1]) && (sep == 0 || sep == s[j])) {
        sep = s[j];
        parts.push_back(s.substr(part_start, j - part_start));
        part_start = ++j;
        continue;
      }
      break;
    }
    parts.push_back(s.substr(part_start, j - part_start));
    bool ok = false;
    if (parts.size() == 3 && !(j < s.size() && alnum(s[j]))) {
      auto n = [](std::string_view p) { return std::stoi(std::string(p)); };
      if (sep == '-' && parts[0].size() == 4 && parts[1].size() <= 2 && parts[2].size() <= 2)
        ok = n(parts[1]) >= 1 && n(parts[1]) <= 12 && n(parts[2]) >= 1 && n(parts[2]) <= 31;
      else if (sep == '/' && parts[0].size() <= 2 && parts[1].size() <= 2 &&
               (parts[2].size() == 2 || parts[2].size() == 4))
        ok = n(parts[0]) >= 1 && n(parts[0]) <= 31 && n(parts[1]) >= 1 && n(parts[1]) <= 31;
    }
    if (ok) {
      out.insert({EntityKind::Date, std::string(s.substr(i, j - i))});
      mark(used, i, j);
    }
    i = std::max(j, i + 1);
  }
}

void scan_named_dates(std::string_view s, std::vector<Word> &words, const std::vector<bool> &used,
                      EntitySet &out) {
  for (std::size_t k = 0; k < words.size(); ++k) {
    Word &w = words[k];
    if (w.consumed || any_used(used, w.begin, w.end) || !month_index(w.raw)) continue;
    std::size_t first = k, last = k;
    auto next_ok = [&](std::size_t idx, bool allow_comma) {
      if (idx >= words.size() || words[idx].consumed) return false;
      return allow_comma ? only_space_or_comma(s, words[idx - 1].end, words[idx].begin)
                         : only_space(s, words[idx - 1].end, words[idx].begin);
    };
    if (k > 0 && !words[k - 1].consumed && is_day(words[k - 1].raw) &&
        only_space(s, words[k - 1].end, w.begin)) {
      // D Month [YYYY]
      first = k - 1;
      if (next_ok(k + 1, false) && is_year(words[k + 1].raw)) last = k + 1;
    } else if (next_ok(k + 1, false) && is_day(words[k + 1].raw)) {
      // Month D[, YYYY]
      last = k + 1;
      if (next_ok(k + 2, true) && is_year(words[k + 2].raw)) last = k + 2;
    } else if (next_ok(k + 1, false) && is_year(words[k + 1].raw)) {
      last = k + 1;
    }
    out.insert({EntityKind::Date, normalized(s.substr(words[first].begin, words[last].end - words[first].begin))});
    for (std::size_t x = first; x <= last; ++x) words[x].consumed = true;
  }
}

void scan_numbers(const std::vector<bool> &used, std::vector<Word> &words, EntitySet &out) {
  for (Word &w : words) {
    if (w.consumed || any_used(used, w.begin, w.end) || !digit(w.raw[0])) continue;
    std::string num;
    for (char c : w.raw) {
      if (digit(c) || c == '.') {
        num.push_back(c);
      } else if (c == ',') {
        continue;
      } else {
        break;
      }
    }
    out.insert({EntityKind::Number, num});
    w.consumed = true;
  }
}

bool capitalized(const Word &w) {
  unsigned char c = static_cast<unsigned char>(w.raw[0]);
  return std::isupper(c) != 0 || (c >= 0xC3 && c <= 0xC3 && w.raw.size() > 1 &&
                                  static_cast<unsigned char>(w.raw[1]) < 0x9F);
}

void scan_proper(std::string_view s, std::vector<Word> &words, const std::vector<bool> &used,
                 EntitySet &out) {
  std::size_t first_word = 0;
  while (first_word < words.size() && any_used(used, words[first_word].begin, words[first_word].end)) ++first_word;
  std::size_t k = 0;
  while (k < words.size()) {
    auto eligible = [&](std::size_t i) {
      return !words[i].consumed && !any_used(used, words[i].begin, words[i].end) && capitalized(words[i]);
    };
    if (!eligible(k)) {
      ++k;
      continue;
    }
    std::size_t a = k, b = k;
    while (b + 1 < words.size() && eligible(b + 1) && only_space(s, words[b].end, words[b + 1].begin)) ++b;
    k = b + 1;
    if (a == first_word && a == b) continue;
    while (a <= b && is_stopword(to_lower(words[a].raw))) ++a;
    while (b >= a && b > 0 && is_stopword(to_lower(words[b].raw))) --b;
    if (a > b) continue;
    std::string text;
    for (std::size_t i = a; i <= b; ++i) {
      if (!text.empty()) text.push_back(' ');
      text += words[i].raw;
    }
    out.insert({EntityKind::ProperSpan, to_lower(text)});
  }
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Number: return "number";
    case EntityKind::Date: return "date";
    case EntityKind::Email: return "email";
    case EntityKind::Url: return "url";
    case EntityKind::ProperSpan: return "proper";
  }
  return "number";
}

EntityKind entity_kind_from_string(std::string_view name) {
  for (auto k : {EntityKind::Number, EntityKind::Date, EntityKind::Email, EntityKind::Url, EntityKind::ProperSpan})
    if (to_string(k) == name) return k;
  throw DataError("unknown entity kind '" + std::string(name) + "'");
}

EntitySet extract_entities(std::string_view sentence) {
  EntitySet out;
  if (sentence.empty()) return out;
  std::vector<bool> used(sentence.size(), false);
  scan_urls(sentence, used, out);
  scan_emails(sentence, used, out);
  scan_numeric_dates(sentence, used, out);
  auto words = words_of(sentence);
  scan_named_dates(sentence, words, used, out);
  scan_numbers(used, words, out);
  scan_proper(sentence, words, used, out);
  return out;
}

}  // namespace plagdet
