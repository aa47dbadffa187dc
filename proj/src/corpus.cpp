#include "plagdet/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "plagdet/errors.hpp"

namespace plagdet {

using nlohmann::json;

Corpus::Corpus(std::vector<Document> docs) {
  for (auto &d : docs) add(std::move(d));
}

void Corpus::add(Document doc) {
  if (doc.id.empty()) throw DataError("document with empty id");
  if (doc.text.empty()) throw DataError("document '" + doc.id + "' has empty text");
  if (by_id_.contains(doc.id)) throw DataError("duplicate document id '" + doc.id + "'");
  by_id_.emplace(doc.id, docs_.size());
  docs_.push_back(std::move(doc));
}

const Document *Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

Corpus ingest_corpus(std::istream &in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error &e) {
      throw DataError(where() + "malformed JSON record (" + e.what() + ")");
    }
    if (!rec.is_object()) throw DataError(where() + "record is not an object");
    if (!rec.contains("id") || !rec["id"].is_string())
      throw DataError(where() + "missing string field 'id'");
    if (!rec.contains("text") || !rec["text"].is_string())
      throw DataError(where() + "missing string field 'text'");
    Document doc;
    doc.id = rec["id"].get<std::string>();
    doc.text = rec["text"].get<std::string>();
    if (rec.contains("meta") && !rec["meta"].is_null()) {
      if (!rec["meta"].is_object()) throw DataError(where() + "'meta' must be an object");
      for (auto &[k, v] : rec["meta"].items()) {
        if (!v.is_string()) throw DataError(where() + "meta value for '" + k + "' is not a string");
        doc.meta.emplace(k, v.get<std::string>());
      }
    }
    try {
      corpus.add(std::move(doc));
    } catch (const DataError &e) {
      throw DataError(where() + e.what());
    }
  }
  return corpus;
}

Corpus load_corpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return ingest_corpus(in);
}

void write_corpus(std::ostream &out, const Corpus &corpus) {
  for (const auto &d : corpus) {
    json rec = {{"id", d.id}, {"text", d.text}};
    if (!d.meta.empty()) rec["meta"] = d.meta;
    out << rec.dump() << '\n';
  }
}

void save_corpus(const std::string &path, const Corpus &corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file '" + path + "'");
  write_corpus(out, corpus);
}

}  // namespace plagdet
