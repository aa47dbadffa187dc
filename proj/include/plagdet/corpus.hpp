#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "plagdet/document.hpp"

namespace plagdet {

// An ingested corpus. Documents keep their ingestion order; ids are unique.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> docs);

  // Throws DataError on duplicate id or empty text.
  void add(Document doc);

  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document &operator[](std::size_t i) const { return docs_[i]; }
  const Document *find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  auto begin() const { return docs_.begin(); }
  auto end() const { return docs_.end(); }
  const std::vector<Document> &documents() const { return docs_; }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Reads line-delimited JSON records {"id", "text", "meta"?}. Blank lines are
// skipped. Errors name the 1-based line number or the duplicate id.
Corpus ingest_corpus(std::istream &in);
Corpus load_corpus(const std::string &path);

void write_corpus(std::ostream &out, const Corpus &corpus);
void save_corpus(const std::string &path, const Corpus &corpus);

}  // namespace plagdet
