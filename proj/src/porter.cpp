#include "plagdet/porter.hpp"

#include <initializer_list>
#include <utility>

namespace plagdet {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_;
  }

 private:
  bool cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && cons(i)) ++i;
    while (i < len) {
      while (i < len && !cons(i)) ++i;
      if (i >= len) break;
      while (i < len && cons(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_cons(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && cons(len - 1);
  }

  // cvc where the final c is not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!cons(len - 1) || cons(len - 2) || !cons(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) const {
    return b_.size() >= s.size() && std::string_view(b_).substr(b_.size() - s.size()) == s;
  }

  std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void replace_suffix(std::string_view suffix, std::string_view with) {
    b_.resize(b_.size() - suffix.size());
    b_.append(with);
  }

  // Longest-suffix rule list: the first matching suffix decides, whether or
  // not its measure condition holds.
  void apply(std::initializer_list<std::pair<std::string_view, std::string_view>> rules,
             int min_measure) {
    for (const auto &[suffix, with] : rules) {
      if (!ends(suffix)) continue;
      if (measure(stem_len(suffix)) > min_measure) replace_suffix(suffix, with);
      return;
    }
  }

  void step1a() {
    if (ends("sses")) {
      replace_suffix("sses", "ss");
    } else if (ends("ies")) {
      replace_suffix("ies", "i");
    } else if (ends("ss")) {
    } else if (ends("s")) {
      replace_suffix("s", "");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
      return;
    }
    bool removed = false;
    if (ends("ed") && has_vowel(stem_len("ed"))) {
      replace_suffix("ed", "");
      removed = true;
    } else if (ends("ing") && has_vowel(stem_len("ing"))) {
      replace_suffix("ing", "");
      removed = true;
    }
    if (!removed) return;

    if (ends("at")) {
      replace_suffix("at", "ate");
    } else if (ends("bl")) {
      replace_suffix("bl", "ble");
    } else if (ends("iz")) {
      replace_suffix("iz", "ize");
    } else if (double_cons(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  void step2() {
    apply({{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
           {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
           {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
           {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
           {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}},
          0);
  }

  void step3() {
    apply({{"icate", "ic"},
           {"ative", ""},
           {"alize", "al"},
           {"iciti", "ic"},
           {"ical", "ic"},
           {"ful", ""},
           {"ness", ""}},
          0);
  }

  void step4() {
    static constexpr std::string_view kSuffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    // Longest match first among suffixes sharing an ending.
    std::string_view best;
    for (std::string_view s : kSuffixes)
      if (ends(s) && s.size() > best.size()) best = s;
    if (best.empty()) return;
    std::size_t len = stem_len(best);
    if (measure(len) <= 1) return;
    if (best == "ion" && !(len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't'))) return;
    b_.resize(len);
  }

  void step5a() {
    if (!ends("e")) return;
    std::size_t len = b_.size() - 1;
    int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
  }

  void step5b() {
    if (ends("ll") && measure(b_.size() - 1) > 1) b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(word).run(); }

}  // namespace plagdet
