// Runs every acceptance criterion at full size and prints one line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "plagdet/align.hpp"
#include "plagdet/harness.hpp"
#include "plagdet/pii.hpp"
#include "plagdet/pipeline.hpp"
#include "plagdet/synth.hpp"

using namespace plagdet;
using namespace oracle;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

const Corpus &seed_corpus() {
  static const Corpus c = synthesize_corpus(600, 7);
  return c;
}

Outcome synthetic_eval() {
  auto start = std::chrono::steady_clock::now();
  Config cfg;
  auto pairs = generate_eval_pairs(seed_corpus(), 200, cfg);
  std::map<PairLabel, std::size_t> counts;
  for (const auto &p : pairs) ++counts[p.label];
  auto r = evaluate_both(pairs, PipelineDetector(cfg));
  double secs = seconds_since(start);
  Outcome o;
  for (auto [label, n] : counts) o.pass &= n == 50;
  std::ostringstream d;
  d << seed_corpus().size() << " docs, 200 pairs;";
  for (auto *mode : {&r.binary, &r.multinomial}) {
    auto &v = mode->per_class[PairLabel::Verbatim];
    auto &p = mode->per_class[PairLabel::Paraphrase];
    auto &i = mode->per_class[PairLabel::Idea];
    o.pass &= v.precision >= 0.95 && v.recall >= 0.85 && p.precision >= 0.75 && i.precision >= 0.60;
    d << (mode == &r.binary ? " binary" : " multinomial") << " V " << fmt("%.3f", v.precision) << "/"
      << fmt("%.3f", v.recall) << " P " << fmt("%.3f", p.precision) << " I " << fmt("%.3f", i.precision) << ";";
  }
  o.pass &= secs <= 600;
  d << " " << fmt("%.1f", secs) << " s";
  o.detail = d.str();
  return o;
}

Outcome threshold_conformance() {
  Config cfg;
  Index index = Index::build(seed_corpus());
  Detector det(seed_corpus(), index, cfg);
  Rng rng(2024);
  std::size_t scans = 0, cases = 0, violations = 0;
  for (int round = 0; scans < 10000; ++round) {
    Config gen = cfg;
    gen.seed = 1000 + static_cast<std::uint64_t>(round);
    auto pairs = generate_eval_pairs(seed_corpus(), 200, gen);
    for (std::size_t k = 0; k < pairs.size() && scans < 10000; ++k) {
      Document q = pairs[k].sus;
      // Every fourth query splices two suspicious texts together.
      if (k % 4 == 3) q.text += " " + pairs[rng.below(pairs.size())].sus.text;
      for (const auto &c : det.scan(q).cases) {
        ++cases;
        bool ok = true;
        if (c.type == PlagiarismType::Verbatim) {
          ok = c.evidence.verbatim_char_len && *c.evidence.verbatim_char_len >= cfg.verbatim_min_chars &&
               utf8_length(c.qry_text) >= cfg.verbatim_min_chars;
        } else {
          ok = c.evidence.best_paraphrase_prob && *c.evidence.best_paraphrase_prob > 0.5 &&
               *c.evidence.best_paraphrase_prob < 0.99;
        }
        if (c.fragment) ok &= c.fragment->src_chars >= 150 && c.fragment->qry_chars >= 150;
        violations += !ok;
      }
      ++scans;
    }
  }
  return {violations == 0 && cases > 0, std::to_string(scans) + " scans, " + std::to_string(cases) + " cases, " +
                                            std::to_string(violations) + " violations"};
}

Outcome retrieval_oracle() {
  Rng rng(5);
  std::size_t mismatches = 0;
  Corpus c = random_corpus(rng, 1000);
  Index idx = Index::build(c);
  Bm25Oracle bm25(c);
  for (int q = 0; q < 100; ++q) {
    auto terms = stem_sequence(testutil::random_words(rng, 1 + rng.below(12), 150));
    mismatches += idx.retrieve_terms(terms, 10) != bm25.top(terms, 10);
  }
  return {mismatches == 0, "1000 docs, 100 queries, " + std::to_string(mismatches) + " mismatches"};
}

Outcome alignment_oracle() {
  Rng rng(3);
  std::size_t span_mismatch = 0, spans = 0;
  for (int t = 0; t < 500; ++t) {
    auto [a, b, min_chars] = random_verbatim_case(rng, t);
    auto got = longest_common_substrings({"s", a, {}}, {"q", b, {}}, min_chars);
    auto want = dp_oracle(a, b, min_chars);
    sort_spans(got);
    sort_spans(want);
    span_mismatch += got != want;
    spans += want.size();
  }
  Rng grid_rng(7);
  std::size_t seed_mismatch = 0, borderline = 0;
  for (int grid = 0; grid < 200; ++grid) {
    Document src{"s", random_doc(grid_rng, 1 + grid_rng.below(25)), {}};
    Document qry{"q", random_doc(grid_rng, 1 + grid_rng.below(25)), {}};
    auto sn = normalize(src), qn = normalize(qry);
    std::map<std::string, double> idf;
    for (const auto &w : kWords) idf[stem_token(w)] = 0.2 + 3.0 * grid_rng.unit();
    IdfFn fn = [&](std::string_view t) { return idf.at(std::string(t)); };
    double cmin = grid % 2 ? 0.30 : 0.20, dmin = grid % 2 ? 0.33 : 0.20;
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto &p : seed(tfidf_sentences(sn, fn), tfidf_sentences(qn, fn), cmin, dmin))
      got.insert({p.src_sentence, p.qry_sentence});
    DenseOracle so(sn, idf), qo(qn, idf);
    std::set<std::pair<std::size_t, std::size_t>> want;
    bool grid_borderline = false;
    for (std::size_t i = 0; i < so.rows.size(); ++i)
      for (std::size_t j = 0; j < qo.rows.size(); ++j) {
        double c = dense_cos(so.rows[i], qo.rows[j]);
        grid_borderline |= std::abs(c - cmin) < 1e-12;
        if (c >= cmin && set_dice(so.rows[i], qo.rows[j]) >= dmin) want.insert({i, j});
      }
    borderline += grid_borderline;
    seed_mismatch += got != want && !grid_borderline;
  }
  return {span_mismatch == 0 && seed_mismatch == 0,
          "500 pairs (" + std::to_string(spans) + " spans), " + std::to_string(span_mismatch) +
              " span mismatches; 200 grids, " + std::to_string(seed_mismatch) + " seed mismatches, " +
              std::to_string(borderline) + " grids with a cosine within 1e-12 of the threshold"};
}

Outcome perplexity_identities() {
  Rng rng(1);
  double worst_uniform = 0, worst_stride = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t v = 2 + rng.below(50000);
    UniformProvider u(v);
    auto toks = random_tokens(rng, 1 + rng.below(3000), 100);
    std::size_t window = 1 + rng.below(600), stride = 1 + rng.below(window);
    worst_uniform = std::max(worst_uniform, std::abs(perplexity(toks, u, window, stride).value / double(v) - 1));
  }
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<std::string>> docs{random_tokens(rng, 200 + rng.below(500), 60)};
    NgramLm lm = NgramLm::train(docs, 1, 0.1);
    auto toks = random_tokens(rng, 10 + rng.below(2000), 80);
    double base = perplexity(toks, lm, 512, 512).value;
    for (std::size_t stride : {1, 3, 64, 256, 511})
      worst_stride = std::max(worst_stride, std::abs(perplexity(toks, lm, 512, stride).value / base - 1));
  }
  return {worst_uniform <= 1e-9 && worst_stride <= 1e-9,
          "max relative error uniform " + fmt("%.2e", worst_uniform) + ", stride " + fmt("%.2e", worst_stride)};
}

Outcome chi_squared() {
  Rng rng(7);
  double worst_stat = 0, worst_p = 0;
  for (int t = 0; t < 1000; ++t) {
    double a = 1 + double(rng.below(5000)), b = 1 + double(rng.below(5000));
    double c = 1 + double(rng.below(5000)), d = 1 + double(rng.below(5000));
    double n = a + b + c + d;
    double want = n * (a * d - b * c) * (a * d - b * c) / ((a + b) * (c + d) * (a + c) * (b + d));
    auto r = chi_squared_test(a, b, c, d);
    if (want > 0) worst_stat = std::max(worst_stat, std::abs(r.statistic / want - 1));
    double pw = chi2_sf_oracle(want);
    if (pw > 0) worst_p = std::max(worst_p, std::abs(r.p / pw - 1));
  }
  auto zero = chi_squared_test(10, 20, 20, 40);
  auto textbook = chi_squared_test(10, 20, 20, 10);
  bool closed = worst_stat <= 1e-9 && worst_p <= 1e-9;
  bool p0 = zero.statistic == 0 && zero.p == 1.0;
  bool tb = std::abs(textbook.p - 0.136) <= 0.005;
  return {closed && p0 && tb,
          std::string("closed form ") + (closed ? "ok" : "FAIL") + " (max rel " + fmt("%.1e", std::max(worst_stat, worst_p)) +
              "); p(0)=1 " + (p0 ? "ok" : "FAIL") + "; (10,20,20,10) statistic " + fmt("%.4f", textbook.statistic) +
              " p " + fmt("%.4f", textbook.p) + " vs 0.136 " + (tb ? "ok" : "FAIL") +
              (tb ? "" : " (0.136 corresponds to statistic 2.222, which the closed form does not produce)")};
}

Outcome filtering() {
  Rng rng(6);
  std::size_t above = 0, pairs_checked = 0;
  for (int t = 0; t < 20; ++t) {
    Corpus base = synthesize_corpus(100, 100 + static_cast<std::uint64_t>(t));
    Corpus c;
    for (const auto &d : base) c.add(d);
    for (std::size_t i = 0; i < 100; ++i) {
      const auto &d = base[rng.below(base.size())];
      c.add({"copy" + std::to_string(i), d.text + (rng.chance(0.5) ? " Extra tail words here." : ""), {}});
    }
    TfidfMatrix m(c);
    auto r = filter_near_duplicates(c, 0.8);
    std::set<std::string> kept;
    for (const auto &d : r.kept) kept.insert(d.id);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (kept.count(c[i].id) && kept.count(c[j].id)) {
          ++pairs_checked;
          above += m.cosine(i, j) > 0.8;
        }
  }
  std::size_t wrong_count = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng.below(300);
    Corpus c;
    std::map<std::string, double> scores;
    for (std::size_t i = 0; i < n; ++i) {
      std::string id = "d" + std::to_string(i);
      c.add({id, "x", {}});
      scores[id] = double(rng.below(50));
    }
    auto r = filter_low_perplexity(c, scores, 0.3);
    wrong_count += r.removed_ids.size() != static_cast<std::size_t>(std::floor(0.3 * double(n)));
  }
  return {above == 0 && wrong_count == 0, "20 corpora of 200 docs, " + std::to_string(pairs_checked) +
                                              " kept pairs, " + std::to_string(above) + " above 0.8; 200 corpora, " +
                                              std::to_string(wrong_count) + " with removed != floor(0.3N)"};
}

Outcome pii() {
  auto rows = testutil::read_tsv(PLAGDET_TEST_DATA "/pii_golden.tsv");
  std::size_t wrong = 0, not_idempotent = 0, unmasked = 0, entities = 0;
  for (const auto &[text, expected] : rows) {
    auto ents = detect_pii(text);
    std::vector<std::string> got;
    for (const auto &e : ents) got.push_back(std::string(to_string(e.kind)) + ":" + text.substr(e.span.begin, e.span.size()));
    wrong += got != testutil::split(expected, " | ");
    std::string once = anonymize(text, ents);
    not_idempotent += anonymize(once, detect_pii(once)) != once;
    std::ptrdiff_t shift = 0;
    for (const auto &e : ents) {
      ++entities;
      unmasked += once.compare(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(e.span.begin) + shift), 3, "***") != 0;
      shift += 3 - static_cast<std::ptrdiff_t>(e.span.size());
    }
  }
  return {wrong == 0 && not_idempotent == 0 && unmasked == 0 && rows.size() == 100,
          std::to_string(rows.size()) + " fixture lines, " + std::to_string(wrong) + " mismatches; " +
              std::to_string(entities) + " entities, " + std::to_string(unmasked) + " unmasked; " +
              std::to_string(not_idempotent) + " non-idempotent"};
}

int run_cli(const std::string &args) {
  std::string cmd = std::string(PLAGDET_CLI) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void strip_timing(json &j) {
  if (j.is_object()) {
    j.erase("timing_ms");
    for (auto &[k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto &v : j) strip_timing(v);
  }
}

std::string slurp(const fs::path &p) { return testutil::read_file(p.string()); }

Outcome determinism() {
  fs::path dir = fs::temp_directory_path() / ("plagdet_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  save_corpus((dir / "seed.jsonl").string(), seed_corpus());
  Corpus queries;
  for (std::size_t i = 0; i < 40; ++i) {
    const auto &d = seed_corpus()[i * 13];
    queries.add({"q" + std::to_string(i), i % 2 ? d.text : "Preface. " + d.text.substr(0, 900), {}});
  }
  save_corpus((dir / "queries.jsonl").string(), queries);
  std::vector<std::string> outputs;
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    fs::path r = dir / ("run" + std::to_string(run));
    std::string w = " --seed 7 --workers 4";
    ok &= run_cli("index" + w + " --corpus " + (dir / "seed.jsonl").string() + " --out " + (r / "idx").string()) == 0;
    ok &= run_cli("scan" + w + " --index " + (r / "idx").string() + " --query " + (dir / "queries.jsonl").string() +
                  " --out " + (r / "scan.json").string()) == 0;
    ok &= run_cli("eval" + w + " --n 200 --seed-corpus " + (dir / "seed.jsonl").string() + " --out " +
                  (r / "eval").string()) == 0;
    if (!ok) break;
    json scan = json::parse(slurp(r / "scan.json"));
    json eval = json::parse(slurp(r / "eval/eval_report.json"));
    strip_timing(scan);
    strip_timing(eval);
    outputs.push_back(slurp(r / "idx/index.bin") + scan.dump() + eval.dump() + slurp(r / "eval/pairs.jsonl"));
  }
  fs::remove_all(dir);
  if (!ok) return {false, "a CLI run failed"};
  return {outputs[0] == outputs[1], std::string("index, scan and eval outputs of two runs ") +
                                        (outputs[0] == outputs[1] ? "identical" : "differ") + " (" +
                                        std::to_string(outputs[0].size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"synthetic evaluation", synthetic_eval},
      {"threshold conformance", threshold_conformance},
      {"retrieval oracle equivalence", retrieval_oracle},
      {"alignment oracle equivalence", alignment_oracle},
      {"perplexity identities", perplexity_identities},
      {"chi-squared", chi_squared},
      {"filtering semantics", filtering},
      {"pii", pii},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << o.detail << " ["
              << fmt("%.1f", seconds_since(start)) << " s]" << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed ? 1 : 0;
}
