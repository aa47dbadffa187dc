#include "plagdet/pii.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>

#include "plagdet/errors.hpp"
#include "plagdet/text.hpp"

namespace plagdet {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

class Claims {
 public:
  explicit Claims(std::size_t n) : used_(n, false) {}
  bool free(std::size_t a, std::size_t b) const {
    for (std::size_t i = a; i < b; ++i)
      if (used_[i]) return false;
    return true;
  }
  void take(std::size_t a, std::size_t b) { std::fill(used_.begin() + a, used_.begin() + b, true); }

 private:
  std::vector<bool> used_;
};

void add(std::vector<PiiEntity> &out, Claims &claims, PiiKind kind, std::size_t a, std::size_t b,
         double conf) {
  if (b <= a || !claims.free(a, b)) return;
  claims.take(a, b);
  out.push_back({kind, {a, b}, conf});
}

void scan_urls(std::string_view s, std::vector<PiiEntity> &out, Claims &claims) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && is_alnum(s[i - 1])) continue;
    std::string_view rest = s.substr(i);
    std::size_t prefix = 0;
    for (std::string_view p : {"https://", "http://", "www."})
      if (rest.size() > p.size() && std::equal(p.begin(), p.end(), rest.begin(), [](char a, char b) {
            return a == std::tolower(static_cast<unsigned char>(b));
          })) {
        prefix = p.size();
        break;
      }
    if (prefix == 0) continue;
    std::size_t j = i + prefix;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           std::string_view("\"'<>()[]{}").find(s[j]) == std::string_view::npos)
      ++j;
    while (j > i + prefix && std::string_view(".,;:!?").find(s[j - 1]) != std::string_view::npos) --j;
    if (j > i + prefix && is_alnum(s[i + prefix])) {
      add(out, claims, PiiKind::Url, i, j, 1.0);
      i = j;
    }
  }
}

bool email_local(char c) { return is_alnum(c) || std::string_view("._%+-").find(c) != std::string_view::npos; }
bool email_domain(char c) { return is_alnum(c) || c == '-' || c == '.'; }

void scan_emails(std::string_view s, std::vector<PiiEntity> &out, Claims &claims) {
  for (std::size_t at = s.find('@'); at != std::string_view::npos; at = s.find('@', at + 1)) {
    std::size_t a = at;
    while (a > 0 && email_local(s[a - 1])) --a;
    while (a < at && !is_alnum(s[a])) ++a;
    std::size_t b = at + 1;
    while (b < s.size() && email_domain(s[b])) ++b;
    while (b > at + 1 && (s[b - 1] == '.' || s[b - 1] == '-')) --b;
    if (a == at || b == at + 1) continue;
    std::string_view domain = s.substr(at + 1, b - at - 1);
    auto dot = domain.rfind('.');
    if (dot == std::string_view::npos || dot == 0) continue;
    std::string_view tld = domain.substr(dot + 1);
    if (tld.size() < 2 || !std::all_of(tld.begin(), tld.end(), is_alpha)) continue;
    if (domain.find("..") != std::string_view::npos) continue;
    add(out, claims, PiiKind::Email, a, b, 1.0);
  }
}

// Digits of a maximal run of digit groups separated by single spaces or
// dashes, starting at i. Returns the end offset.
std::size_t digit_groups(std::string_view s, std::size_t i, std::string &digits, std::size_t &groups) {
  std::size_t j = i;
  digits.clear();
  groups = 0;
  while (j < s.size() && is_digit(s[j])) {
    while (j < s.size() && is_digit(s[j])) digits.push_back(s[j++]);
    ++groups;
    if (j + 1 < s.size() && (s[j] == ' ' || s[j] == '-') && is_digit(s[j + 1])) ++j;
  }
  return j;
}

bool boundary_before(std::string_view s, std::size_t i) {
  return i == 0 || !(is_alnum(s[i - 1]) || s[i - 1] == '.' || s[i - 1] == ',');
}
bool boundary_after(std::string_view s, std::size_t j) {
  if (j >= s.size()) return true;
  if (is_alnum(s[j])) return false;
  if ((s[j] == '.' || s[j] == ',') && j + 1 < s.size() && is_digit(s[j + 1])) return false;
  return true;
}

void scan_ips(std::string_view s, std::vector<PiiEntity> &out, Claims &claims) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
    std::size_t j = i;
    int octets = 0;
    bool ok = true;
    while (octets < 4) {
      std::size_t k = j;
      while (k < s.size() && is_digit(s[k]) && k - j < 4) ++k;
      if (k == j || k - j > 3 || std::stoi(std::string(s.substr(j, k - j))) > 255) {
        ok = false;
        break;
      }
      ++octets;
      j = k;
      if (octets < 4) {
        if (j < s.size() && s[j] == '.') ++j;
        else {
          ok = false;
          break;
        }
      }
    }
    if (!ok || !boundary_after(s, j)) continue;
    add(out, claims, PiiKind::IpAddress, i, j, 1.0);
    i = j;
  }
}

void scan_cards(std::string_view s, std::vector<PiiEntity> &out, Claims &claims) {
  std::string digits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
    std::size_t groups = 0;
    std::size_t j = digit_groups(s, i, digits, groups);
    if (boundary_after(s, j) && digits.size() >= 13 && digits.size() <= 19 && luhn_valid(digits))
      add(out, claims, PiiKind::CreditCardLike, i, j, 1.0);
    i = j;
  }
}

void scan_phones(std::string_view s, std::vector<PiiEntity> &out, Claims &claims) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool plus = s[i] == '+';
    bool paren = s[i] == '(';
    if (!(plus || paren || is_digit(s[i]))) continue;
    if (i > 0 && (is_alnum(s[i - 1]) || s[i - 1] == '.' || s[i - 1] == ',' || s[i - 1] == '+' ||
                  s[i - 1] == '-' || s[i - 1] == '/'))
      continue;
    std::size_t j = i + ((plus) ? 1 : 0);
    std::size_t ndigits = 0, groups = 0, end = i;
    bool has_paren = false;
    while (j < s.size()) {
      if (s[j] == '(') {
        std::size_t k = j + 1, d = 0;
        while (k < s.size() && is_digit(s[k])) ++k, ++d;
        if (d == 0 || k >= s.size() || s[k] != ')') break;
        ndigits += d;
        ++groups;
        has_paren = true;
        j = end = k + 1;
      } else if (is_digit(s[j])) {
        while (j < s.size() && is_digit(s[j])) ++j, ++ndigits;
        ++groups;
        end = j;
      } else {
        break;
      }
      if (j < s.size() && std::string_view(" -.").find(s[j]) != std::string_view::npos && j + 1 < s.size() &&
          (is_digit(s[j + 1]) || s[j + 1] == '(')) {
        ++j;
      } else if (j + 1 < s.size() && s[j] == ' ' && s[j + 1] == '(') {
        ++j;
      } else {
        break;
      }
    }
    bool shaped = plus || has_paren || groups >= 3;
    if (shaped && ndigits >= 10 && ndigits <= 15 && boundary_after(s, end)) {
      add(out, claims, PiiKind::Phone, i, end, 1.0);
      i = end;
    } else if (end > i) {
      i = end;  // never restart inside a rejected digit run
    }
  }
}

struct Word {
  std::size_t begin, end;
};

std::vector<Word> capitalized_words(std::string_view s) {
  std::vector<Word> words;
  for (std::size_t i = 0; i < s.size();) {
    if (!is_alpha(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (is_alpha(s[j]) || (s[j] == '-' && j + 1 < s.size() && is_alpha(s[j + 1])))) ++j;
    bool prev_ok = i == 0 || !(is_digit(s[i - 1]) || s[i - 1] == '@' || s[i - 1] == '.' || s[i - 1] == '/');
    bool next_ok = j >= s.size() || !(is_digit(s[j]) || s[j] == '@');
    if (prev_ok && next_ok && is_upper(s[i]) && j - i >= 2 && is_lower(s[i + 1])) words.push_back({i, j});
    i = j;
  }
  return words;
}

bool adjacent(std::string_view s, const Word &a, const Word &b) {
  return b.begin == a.end + 1 && s[a.end] == ' ';
}

}  // namespace

std::string_view to_string(PiiKind kind) {
  switch (kind) {
    case PiiKind::Email: return "email";
    case PiiKind::Phone: return "phone";
    case PiiKind::Url: return "url";
    case PiiKind::PersonName: return "person_name";
    case PiiKind::Location: return "location";
    case PiiKind::CreditCardLike: return "credit_card_like";
    case PiiKind::IpAddress: return "ip_address";
  }
  return "email";
}

PiiKind pii_kind_from_string(std::string_view s) {
  for (PiiKind k : kAllPiiKinds)
    if (to_string(k) == s) return k;
  throw DataError("unknown PII kind '" + std::string(s) + "'");
}

bool is_pattern_kind(PiiKind kind) { return kind != PiiKind::PersonName && kind != PiiKind::Location; }

bool luhn_valid(std::string_view digits) {
  if (digits.empty()) return false;
  int sum = 0;
  bool dbl = false;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (!is_digit(*it)) return false;
    int d = *it - '0';
    if (dbl) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
    dbl = !dbl;
  }
  return sum % 10 == 0;
}

std::set<std::string> load_word_list(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list '" + path + "'");
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = collapse_whitespace(line);
    if (!w.empty() && w[0] != '#') out.insert(w);
  }
  return out;
}

PiiScanner::PiiScanner(std::set<std::string> first_names, std::set<std::string> locations, PiiParams params)
    : first_names_(std::move(first_names)), locations_(std::move(locations)), params_(params) {
  for (const auto &l : locations_)
    max_location_words_ = std::max<std::size_t>(max_location_words_, std::count(l.begin(), l.end(), ' ') + 1);
}

PiiScanner PiiScanner::from_data_dir(const std::string &dir, PiiParams params) {
  return PiiScanner(load_word_list(dir + "/first_names.txt"), load_word_list(dir + "/locations.txt"), params);
}

const PiiScanner &PiiScanner::builtin() {
  static const PiiScanner scanner = from_data_dir(PLAGDET_DATA_DIR);
  return scanner;
}

std::vector<PiiEntity> PiiScanner::detect(std::string_view text) const {
  return detect(text, params_.threshold);
}

std::vector<PiiEntity> PiiScanner::detect(std::string_view s, double threshold) const {
  std::vector<PiiEntity> found;
  Claims claims(s.size());
  scan_urls(s, found, claims);
  scan_emails(s, found, claims);
  scan_ips(s, found, claims);
  scan_cards(s, found, claims);
  scan_phones(s, found, claims);

  auto words = capitalized_words(s);
  std::vector<bool> taken(words.size(), false);
  auto word = [&](std::size_t k) { return s.substr(words[k].begin, words[k].end - words[k].begin); };

  // Locations: longest gazetteer match of adjacent capitalized words.
  for (std::size_t k = 0; k < words.size(); ++k) {
    for (std::size_t len = std::min(max_location_words_, words.size() - k); len >= 1; --len) {
      bool chain = true;
      for (std::size_t m = k; m + 1 < k + len; ++m) chain = chain && adjacent(s, words[m], words[m + 1]);
      if (!chain) continue;
      std::string_view name = s.substr(words[k].begin, words[k + len - 1].end - words[k].begin);
      if (!locations_.contains(std::string(name))) continue;
      // A first name followed by a surname is a person, not a place.
      if (len == 1 && first_names_.contains(std::string(name)) && k + 1 < words.size() &&
          adjacent(s, words[k], words[k + 1]))
        break;
      if (claims.free(words[k].begin, words[k + len - 1].end)) {
        found.push_back({PiiKind::Location, {words[k].begin, words[k + len - 1].end}, params_.location_confidence});
        claims.take(words[k].begin, words[k + len - 1].end);
        for (std::size_t m = k; m < k + len; ++m) taken[m] = true;
      }
      k += len - 1;
      break;
    }
  }
  // Person names: two or three adjacent capitalized words, starting at the
  // first known given name of a run when there is one.
  auto name_word = [&](std::size_t k) { return !taken[k] && !is_stopword(to_lower(word(k))); };
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (!name_word(k)) continue;
    std::size_t r = k;
    while (r + 1 < words.size() && name_word(r + 1) && adjacent(s, words[r], words[r + 1])) ++r;
    if (r == k) continue;
    std::size_t start = k;
    double conf = params_.name_fallback_confidence;
    for (std::size_t m = k; m < r; ++m)
      if (first_names_.contains(std::string(word(m)))) {
        start = m;
        conf = params_.name_confidence;
        break;
      }
    std::size_t last = std::min(start + 2, r);
    if (conf >= threshold && claims.free(words[start].begin, words[last].end)) {
      found.push_back({PiiKind::PersonName, {words[start].begin, words[last].end}, conf});
      claims.take(words[start].begin, words[last].end);
      for (std::size_t m = start; m <= last; ++m) taken[m] = true;
    }
    k = r;
  }

  std::erase_if(found, [&](const PiiEntity &e) { return e.confidence < threshold; });
  std::sort(found.begin(), found.end(),
            [](const PiiEntity &a, const PiiEntity &b) { return a.span.begin < b.span.begin; });
  return found;
}

std::vector<PiiEntity> detect_pii(std::string_view text, double threshold) {
  return PiiScanner::builtin().detect(text, threshold);
}

std::string anonymize(std::string_view text, std::span<const PiiEntity> entities) {
  std::vector<CharSpan> spans;
  for (const auto &e : entities)
    if (!e.span.empty() && e.span.end <= text.size()) spans.push_back(e.span);
  std::sort(spans.begin(), spans.end(), [](const CharSpan &a, const CharSpan &b) { return a.begin < b.begin; });
  std::vector<CharSpan> merged;
  for (const auto &sp : spans) {
    if (!merged.empty() && sp.begin < merged.back().end)
      merged.back().end = std::max(merged.back().end, sp.end);
    else
      merged.push_back(sp);
  }
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (const auto &sp : merged) {
    out.append(text.substr(pos, sp.begin - pos));
    out.append("***");
    pos = sp.end;
  }
  out.append(text.substr(pos));
  return out;
}

PiiSummary pii_summary(std::span<const PlagiarismCase> cases, const PiiScanner &scanner) {
  PiiSummary summary;
  for (PiiKind k : kAllPiiKinds)
    for (PlagiarismType t : {PlagiarismType::Verbatim, PlagiarismType::Paraphrase, PlagiarismType::Idea})
      summary[k][t] = 0;
  std::set<std::pair<PlagiarismType, std::string>> seen;
  for (const auto &c : cases) {
    if (!seen.emplace(c.type, c.qry_text).second) continue;
    std::set<PiiKind> kinds;
    for (const auto &e : scanner.detect(c.qry_text)) kinds.insert(e.kind);
    for (PiiKind k : kinds) ++summary[k][c.type];
  }
  return summary;
}

nlohmann::json to_json(const PiiSummary &summary) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[kind, by_type] : summary) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto &[type, n] : by_type) row[std::string(to_string(type))] = n;
    j[std::string(to_string(kind))] = row;
  }
  return j;
}

}  // namespace plagdet
