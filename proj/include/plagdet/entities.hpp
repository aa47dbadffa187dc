#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace plagdet {

enum class EntityKind { Number, Date, Email, Url, ProperSpan };

std::string_view to_string(EntityKind kind);
// Accepts the names produced by to_string; throws DataError otherwise.
EntityKind entity_kind_from_string(std::string_view name);

struct Entity {
  EntityKind kind = EntityKind::Number;
  // Lowercase, internal whitespace collapsed.
  std::string text;

  friend auto operator<=>(const Entity &, const Entity &) = default;
};

using EntitySet = std::set<Entity>;

// Rule-based extraction: URLs and emails first, then named-month and numeric
// dates, then numbers (thousands separators dropped), then runs of
// capitalized words. A run is dropped when it is only the sentence-initial
// word; leading and trailing stopwords are trimmed from runs.
EntitySet extract_entities(std::string_view sentence);

class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;
  virtual EntitySet extract(std::string_view sentence) const = 0;
};

class BuiltinEntityExtractor final : public EntityExtractor {
 public:
  EntitySet extract(std::string_view sentence) const override { return extract_entities(sentence); }
};

}  // namespace plagdet
