#include <sstream>

#include "plagdet/errors.hpp"
#include "plagdet/pipeline.hpp"

namespace plagdet {

using nlohmann::json;

namespace {

json span_json(const CharSpan &s) { return json::array({s.begin, s.end}); }

CharSpan span_from(const json &j) {
  if (!j.is_array() || j.size() != 2) throw DataError("span must be a two-element array");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

}  // namespace

json to_json(const PlagiarismCase &c) {
  json j;
  j["type"] = std::string(to_string(c.type));
  j["src_doc_id"] = c.src_doc_id;
  j["src_span"] = span_json(c.src_span);
  j["qry_span"] = span_json(c.qry_span);
  if (c.fragment) {
    const FragmentPair &f = *c.fragment;
    j["fragment"] = {{"src_first_sentence", f.src_first_sentence},
                     {"src_sentence_count", f.src_sentence_count},
                     {"qry_first_sentence", f.qry_first_sentence},
                     {"qry_sentence_count", f.qry_sentence_count},
                     {"seed_count", f.seed_count},
                     {"src_chars", f.src_chars},
                     {"qry_chars", f.qry_chars},
                     {"qry_excluded", f.qry_excluded}};
  }
  json ev = json::object();
  const Evidence &e = c.evidence;
  if (e.verbatim_char_len) ev["verbatim_char_len"] = *e.verbatim_char_len;
  if (e.best_paraphrase_prob) ev["best_paraphrase_prob"] = *e.best_paraphrase_prob;
  if (e.sentence_ratio) ev["sentence_ratio"] = *e.sentence_ratio;
  if (e.matched_sentence_pair)
    ev["matched_sentence_pair"] = json::array({e.matched_sentence_pair->first, e.matched_sentence_pair->second});
  if (c.type != PlagiarismType::Verbatim) {
    ev["accepting_pairs"] = e.accepting_pairs;
    ev["pruned_quoted_sentences"] = e.pruned_quoted_sentences;
  }
  if (!e.flags.empty()) ev["flags"] = e.flags;
  j["evidence"] = ev;
  j["qry_text"] = c.qry_text;
  return j;
}

PlagiarismCase case_from_json(const json &j) {
  try {
    PlagiarismCase c;
    c.type = plagiarism_type_from_string(j.at("type").get<std::string>());
    c.src_doc_id = j.at("src_doc_id").get<std::string>();
    c.src_span = span_from(j.at("src_span"));
    c.qry_span = span_from(j.at("qry_span"));
    c.qry_text = j.at("qry_text").get<std::string>();
    if (j.contains("fragment")) {
      const json &f = j["fragment"];
      FragmentPair fp;
      fp.src_span = c.src_span;
      fp.qry_span = c.qry_span;
      fp.src_first_sentence = f.at("src_first_sentence").get<std::size_t>();
      fp.src_sentence_count = f.at("src_sentence_count").get<std::size_t>();
      fp.qry_first_sentence = f.at("qry_first_sentence").get<std::size_t>();
      fp.qry_sentence_count = f.at("qry_sentence_count").get<std::size_t>();
      fp.seed_count = f.at("seed_count").get<std::size_t>();
      fp.src_chars = f.at("src_chars").get<std::size_t>();
      fp.qry_chars = f.at("qry_chars").get<std::size_t>();
      fp.qry_excluded = f.at("qry_excluded").get<std::vector<std::size_t>>();
      c.fragment = fp;
    }
    const json &ev = j.at("evidence");
    if (ev.contains("verbatim_char_len")) c.evidence.verbatim_char_len = ev["verbatim_char_len"].get<std::size_t>();
    if (ev.contains("best_paraphrase_prob")) c.evidence.best_paraphrase_prob = ev["best_paraphrase_prob"].get<double>();
    if (ev.contains("sentence_ratio")) c.evidence.sentence_ratio = ev["sentence_ratio"].get<double>();
    if (ev.contains("matched_sentence_pair"))
      c.evidence.matched_sentence_pair = {ev["matched_sentence_pair"][0].get<std::size_t>(),
                                          ev["matched_sentence_pair"][1].get<std::size_t>()};
    c.evidence.accepting_pairs = ev.value("accepting_pairs", std::size_t{0});
    c.evidence.pruned_quoted_sentences = ev.value("pruned_quoted_sentences", std::size_t{0});
    if (ev.contains("flags")) c.evidence.flags = ev["flags"].get<std::vector<std::string>>();
    return c;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed case record: ") + e.what());
  }
}

json to_json(const DetectionReport &r, bool with_timing) {
  json j;
  j["qry_doc_id"] = r.qry_doc_id;
  j["candidates_examined"] = r.candidates_examined;
  json cands = json::array();
  for (const auto &c : r.candidates) cands.push_back({{"doc_id", c.doc_id}, {"score", c.score}});
  j["candidates"] = cands;
  json cases = json::array();
  for (const auto &c : r.cases) cases.push_back(to_json(c));
  j["cases"] = cases;
  if (with_timing) j["timing_ms"] = r.timing_ms;
  return j;
}

DetectionReport report_from_json(const json &j) {
  try {
    DetectionReport r;
    r.qry_doc_id = j.at("qry_doc_id").get<std::string>();
    r.candidates_examined = j.value("candidates_examined", std::size_t{0});
    if (j.contains("candidates"))
      for (const auto &c : j["candidates"])
        r.candidates.push_back({c.at("doc_id").get<std::string>(), c.at("score").get<double>()});
    for (const auto &c : j.at("cases")) r.cases.push_back(case_from_json(c));
    r.timing_ms = j.value("timing_ms", std::int64_t{0});
    return r;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed detection report: ") + e.what());
  }
}

json to_json(const AggregateReport &a) {
  json j;
  j["total_docs"] = a.total_docs;
  json types = json::object();
  for (const auto &[t, tc] : a.docs_with_type)
    types[std::string(to_string(t))] = {{"count", tc.count}, {"percentage", tc.percentage}};
  j["docs_with_type"] = types;
  j["case_length_stats"] = {{"verbatim_cases", a.verbatim_cases}, {"median_chars", a.median_chars}, {"max_chars", a.max_chars}};
  json occ = json::object();
  for (const auto &[t, m] : a.median_occurrences) occ[std::string(to_string(t))] = m;
  j["occurrence_stats"] = {{"median_occurrences", occ}};
  j["pii"] = to_json(a.pii);
  json errors = json::array();
  for (const auto &e : a.errors) errors.push_back({{"doc_id", e.doc_id}, {"message", e.message}});
  j["errors"] = errors;
  return j;
}

json to_json(const CorpusScan &s, bool with_timing) {
  json j;
  j["aggregate"] = to_json(s.aggregate);
  json reports = json::array();
  for (const auto &r : s.reports) reports.push_back(to_json(r, with_timing));
  j["reports"] = reports;
  return j;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_html(const json &scan) {
  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Plagiarism report</title>\n"
       "<style>body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
       "td,th{border:1px solid #ccc;padding:4px 8px}.verbatim{background:#fdd}"
       ".paraphrase{background:#ffd}.idea{background:#dfd}pre{white-space:pre-wrap}</style>"
       "</head><body>\n<h1>Plagiarism report</h1>\n";
  const json &agg = scan.at("aggregate");
  h << "<p>Documents scanned: " << agg.at("total_docs").get<std::size_t>() << "</p>\n<table><tr><th>type</th><th>documents</th><th>%</th></tr>\n";
  for (const auto &[type, tc] : agg.at("docs_with_type").items())
    h << "<tr><td>" << escape(type) << "</td><td>" << tc.at("count").get<std::size_t>() << "</td><td>"
      << tc.at("percentage").get<double>() << "</td></tr>\n";
  h << "</table>\n";
  if (!agg.at("errors").empty()) {
    h << "<h2>Errors</h2><ul>\n";
    for (const auto &e : agg["errors"])
      h << "<li>" << escape(e.at("doc_id").get<std::string>()) << ": " << escape(e.at("message").get<std::string>()) << "</li>\n";
    h << "</ul>\n";
  }
  for (const auto &r : scan.at("reports")) {
    if (r.at("cases").empty()) continue;
    h << "<h2>" << escape(r.at("qry_doc_id").get<std::string>()) << "</h2>\n";
    for (const auto &c : r["cases"]) {
      std::string type = c.at("type").get<std::string>();
      h << "<div class=\"" << type << "\"><b>" << type << "</b> from " << escape(c.at("src_doc_id").get<std::string>())
        << " [" << c["qry_span"][0].get<std::size_t>() << ", " << c["qry_span"][1].get<std::size_t>() << ")"
        << "<pre>" << escape(c.at("qry_text").get<std::string>()) << "</pre></div>\n";
    }
  }
  h << "</body></html>\n";
  return h.str();
}

}  // namespace plagdet
