#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plagdet/classify.hpp"
#include "plagdet/document.hpp"

namespace plagdet {

enum class PiiKind { Email, Phone, Url, PersonName, Location, CreditCardLike, IpAddress };

inline constexpr std::array kAllPiiKinds = {PiiKind::Email,          PiiKind::Phone,
                                            PiiKind::Url,            PiiKind::PersonName,
                                            PiiKind::Location,       PiiKind::CreditCardLike,
                                            PiiKind::IpAddress};

std::string_view to_string(PiiKind kind);
PiiKind pii_kind_from_string(std::string_view s);
// Email, Phone, Url, CreditCardLike and IpAddress.
bool is_pattern_kind(PiiKind kind);

struct PiiEntity {
  PiiKind kind = PiiKind::Email;
  CharSpan span;
  double confidence = 0.0;

  friend bool operator==(const PiiEntity &, const PiiEntity &) = default;
};

struct PiiParams {
  double threshold = 0.7;
  double name_confidence = 0.75;
  double name_fallback_confidence = 0.5;
  double location_confidence = 0.75;
};

bool luhn_valid(std::string_view digits);

class PiiScanner {
 public:
  PiiScanner(std::set<std::string> first_names, std::set<std::string> locations, PiiParams params = {});
  // Gazetteers from the shipped data directory.
  static PiiScanner from_data_dir(const std::string &dir, PiiParams params = {});
  static const PiiScanner &builtin();

  // Entities with confidence >= threshold, sorted by span, non-overlapping.
  std::vector<PiiEntity> detect(std::string_view text) const;
  std::vector<PiiEntity> detect(std::string_view text, double threshold) const;

  const PiiParams &params() const { return params_; }

 private:
  std::set<std::string> first_names_;
  std::set<std::string> locations_;
  std::size_t max_location_words_ = 1;
  PiiParams params_;
};

std::vector<PiiEntity> detect_pii(std::string_view text, double threshold = 0.7);

// Replaces every entity span with "***"; overlapping spans are merged first.
std::string anonymize(std::string_view text, std::span<const PiiEntity> entities);

// kind -> plagiarism type -> number of unique plagiarized substrings holding
// at least one entity of that kind. All kinds and types are present.
using PiiSummary = std::map<PiiKind, std::map<PlagiarismType, std::size_t>>;
PiiSummary pii_summary(std::span<const PlagiarismCase> cases, const PiiScanner &scanner);
nlohmann::json to_json(const PiiSummary &summary);

std::set<std::string> load_word_list(const std::string &path);

}  // namespace plagdet
