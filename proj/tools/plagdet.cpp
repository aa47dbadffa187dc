#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plagdet/config.hpp"
#include "plagdet/corpus.hpp"
#include "plagdet/errors.hpp"
#include "plagdet/harness.hpp"
#include "plagdet/index.hpp"
#include "plagdet/metrics.hpp"
#include "plagdet/pii.hpp"
#include "plagdet/pipeline.hpp"
#include "plagdet/service_client.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plagdet;

namespace {

struct Common {
  std::string config_path;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App *cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--workers", workers, "worker threads (0 = all CPUs)");
    cmd->add_option("--seed", seed, "random seed");
  }

  Config resolve() const {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    apply_env(cfg);
    if (workers) cfg.workers = *workers;
    if (seed) cfg.seed = *seed;
    check(cfg);
    return cfg;
  }
};

void write_text(const std::string &path, const std::string &text) {
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
  if (!out) throw DataError("write to '" + path + "' failed");
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Index load_index(const std::string &dir) {
  std::ifstream in(fs::path(dir) / "index.bin", std::ios::binary);
  if (!in) throw DataError("no index at '" + dir + "' (expected index.bin)");
  return Index::load(in);
}

std::unique_ptr<LikelihoodProvider> make_provider(const std::string &kind, const Corpus &train_on, const Config &cfg,
                                                  std::unique_ptr<ServiceClient> &client) {
  auto lm = std::make_unique<NgramLm>(NgramLm::train(train_on, cfg.lm_order, cfg.lm_add_k));
  if (kind == "builtin") return lm;
  if (kind == "uniform") return std::make_unique<UniformProvider>(lm->vocab_size());
  client = std::make_unique<ServiceClient>(cfg.service_url, std::chrono::milliseconds(cfg.service_timeout_ms),
                                           cfg.service_max_in_flight);
  return std::make_unique<ExternalLikelihoodProvider>(*client, lm->vocab_size());
}

json perplexity_json(const PerplexityResult &r) {
  return {{"value", r.value}, {"token_count", r.token_count}, {"window", r.window}, {"stride", r.stride}};
}

json similarity_json(const SimilarityMatrixSummary &s) {
  json above = json::object();
  for (const auto &[t, n] : s.pairs_above) above[std::to_string(t).substr(0, 4)] = n;
  return {{"mean_cosine", s.mean_cosine}, {"pairs_above", above}, {"pairs_evaluated", s.pairs_evaluated},
          {"sampled", s.sampled}};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Plagiarism detection and corpus analysis"};
  app.require_subcommand(1);
  app.footer("Config keys and defaults (JSON config file, or environment variables " + std::string(kEnvPrefix) +
             "<KEY IN UPPERCASE>; flags override both):\n" + describe_defaults() +
             "\nExit codes: 0 success, 1 usage error, 2 data error, 3 model service error.");

  Common common;

  std::string corpus_path, out_path, index_dir, query_path, format = "json", reference_path, mode, provider = "builtin",
                                                   seed_corpus, report_path;
  std::size_t n_pairs = 200;
  std::optional<double> fraction, threshold;
  bool do_anonymize = false;

  auto *index_cmd = app.add_subcommand("index", "build and persist an index over a corpus");
  index_cmd->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  index_cmd->add_option("--out", out_path, "output directory")->required();
  common.attach(index_cmd);

  auto *scan_cmd = app.add_subcommand("scan", "scan query documents against an index");
  scan_cmd->add_option("--index", index_dir, "index directory")->required();
  scan_cmd->add_option("--query", query_path, "JSONL query documents")->required();
  scan_cmd->add_option("--out", out_path, "report file")->required();
  scan_cmd->add_option("--format", format, "json or html")->check(CLI::IsMember({"json", "html"}))->capture_default_str();
  common.attach(scan_cmd);

  auto *metrics_cmd = app.add_subcommand("metrics", "perplexity and intra-corpus similarity");
  metrics_cmd->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  metrics_cmd->add_option("--reference", reference_path, "corpus the language model is trained on");
  metrics_cmd->add_option("--out", out_path, "metrics JSON")->required();
  metrics_cmd->add_option("--provider", provider, "builtin, uniform or external")
      ->check(CLI::IsMember({"builtin", "uniform", "external"}))
      ->capture_default_str();
  common.attach(metrics_cmd);

  auto *filter_cmd = app.add_subcommand("filter", "drop low-perplexity documents or near duplicates");
  filter_cmd->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  filter_cmd->add_option("--mode", mode, "perplexity or dedup")->required()->check(CLI::IsMember({"perplexity", "dedup"}));
  filter_cmd->add_option("--out", out_path, "surviving corpus (JSONL); removed ids go to <out>.removed.json")->required();
  filter_cmd->add_option("--reference", reference_path, "language model training corpus (perplexity mode)");
  filter_cmd->add_option("--provider", provider, "builtin, uniform or external")
      ->check(CLI::IsMember({"builtin", "uniform", "external"}))
      ->capture_default_str();
  filter_cmd->add_option("--fraction", fraction, "fraction removed in perplexity mode");
  filter_cmd->add_option("--threshold", threshold, "cosine threshold in dedup mode");
  common.attach(filter_cmd);

  auto *eval_cmd = app.add_subcommand("eval", "generate labeled pairs and evaluate the detector");
  eval_cmd->add_option("--seed-corpus", seed_corpus, "JSONL seed corpus")->required();
  eval_cmd->add_option("--n", n_pairs, "number of pairs")->capture_default_str();
  eval_cmd->add_option("--out", out_path, "output directory")->required();
  common.attach(eval_cmd);

  auto *pii_cmd = app.add_subcommand("pii", "scan the plagiarized spans of a report for PII");
  pii_cmd->add_option("--report", report_path, "scan report JSON")->required();
  pii_cmd->add_option("--out", out_path, "PII JSON")->required();
  pii_cmd->add_flag("--anonymize", do_anonymize, "also write the report with PII masked as ***");
  common.attach(pii_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Config cfg = common.resolve();
    unsigned workers = cfg.effective_workers();

    if (*index_cmd) {
      Corpus corpus = load_corpus(corpus_path);
      Index index = Index::build(corpus, workers);
      fs::create_directories(out_path);
      std::ofstream out(fs::path(out_path) / "index.bin", std::ios::binary);
      if (!out) throw DataError("cannot write index to '" + out_path + "'");
      index.save(out);
      save_corpus((fs::path(out_path) / "corpus.jsonl").string(), corpus);
      std::cout << "documents: " << index.doc_count() << "\nvocabulary: " << index.vocabulary_size() << "\n";
    } else if (*scan_cmd) {
      Index index = load_index(index_dir);
      Corpus corpus = load_corpus((fs::path(index_dir) / "corpus.jsonl").string());
      Corpus queries = load_corpus(query_path);
      CorpusScan result = scan_corpus(queries, index, corpus, cfg);
      json j = to_json(result);
      write_text(out_path, format == "html" ? render_html(j) : j.dump(2) + "\n");
      const auto &agg = result.aggregate;
      std::cout << "scanned: " << agg.total_docs << "\n";
      for (const auto &[t, tc] : agg.docs_with_type)
        std::cout << to_string(t) << ": " << tc.count << " (" << tc.percentage << "%)\n";
      if (!agg.errors.empty()) std::cout << "errors: " << agg.errors.size() << "\n";
    } else if (*metrics_cmd) {
      Corpus corpus = load_corpus(corpus_path);
      Corpus reference = reference_path.empty() ? corpus : load_corpus(reference_path);
      std::unique_ptr<ServiceClient> client;
      auto lm = make_provider(provider, reference, cfg, client);
      json j;
      j["provider"] = provider;
      j["vocab_size"] = lm->vocab_size();
      j["corpus_perplexity"] = perplexity_json(corpus_perplexity(corpus, *lm, cfg.corpus_window, cfg.corpus_stride));
      if (corpus.size() >= 2)
        j["intra_similarity"] = similarity_json(intra_similarity(corpus, cfg.similarity_sample_cap,
                                                                 cfg.similarity_sample_pairs, cfg.seed,
                                                                 {cfg.dedup_threshold}, workers));
      else
        throw UsageError("intra-corpus similarity needs at least two documents");
      j["removed_ids"] = json::array();
      write_text(out_path, j.dump(2) + "\n");
      std::cout << "corpus perplexity: " << j["corpus_perplexity"]["value"].get<double>() << "\n"
                << "mean cosine: " << j["intra_similarity"]["mean_cosine"].get<double>() << "\n";
    } else if (*filter_cmd) {
      Corpus corpus = load_corpus(corpus_path);
      FilterResult r;
      json manifest;
      manifest["mode"] = mode;
      if (mode == "perplexity") {
        double f = fraction.value_or(cfg.filter_fraction);
        if (!(f > 0 && f < 1)) throw UsageError("--fraction must be in (0, 1)");
        Corpus reference = reference_path.empty() ? corpus : load_corpus(reference_path);
        std::unique_ptr<ServiceClient> client;
        auto lm = make_provider(provider, reference, cfg, client);
        auto scores = per_doc_perplexity(corpus, *lm, cfg.doc_window, cfg.doc_stride, workers);
        r = filter_low_perplexity(corpus, scores, f);
        manifest["fraction"] = f;
        json s = json::object();
        for (const auto &id : r.removed_ids) s[id] = scores.at(id);
        manifest["removed_perplexity"] = s;
      } else {
        double t = threshold.value_or(cfg.dedup_threshold);
        if (!(t > 0 && t <= 1)) throw UsageError("--threshold must be in (0, 1]");
        r = filter_near_duplicates(corpus, t);
        manifest["threshold"] = t;
      }
      manifest["input"] = corpus.size();
      manifest["kept"] = r.kept.size();
      manifest["removed_ids"] = r.removed_ids;
      save_corpus(out_path, r.kept);
      write_text(out_path + ".removed.json", manifest.dump(2) + "\n");
      std::cout << "kept: " << r.kept.size() << "\nremoved: " << r.removed_ids.size() << "\n";
    } else if (*eval_cmd) {
      Corpus seed = load_corpus(seed_corpus);
      auto pairs = generate_eval_pairs(seed, n_pairs, cfg);
      fs::create_directories(out_path);
      {
        std::ofstream out(fs::path(out_path) / "pairs.jsonl");
        write_pairs(out, pairs);
      }
      save_corpus((fs::path(out_path) / "corpus.jsonl").string(), pairs_corpus(pairs));
      PipelineDetector detector(cfg);
      EvalReport report = evaluate_both(pairs, detector);
      json j = to_json(report, pairs);
      j["config"] = to_json(cfg);
      write_text((fs::path(out_path) / "eval_report.json").string(), j.dump(2) + "\n");
      std::cout << "class       binary P  binary R  multi P   multi R\n";
      for (PairLabel c : {PairLabel::Verbatim, PairLabel::Paraphrase, PairLabel::Idea}) {
        const auto &b = report.binary.per_class.at(c);
        const auto &m = report.multinomial.per_class.at(c);
        std::printf("%-11s %-9.3f %-9.3f %-9.3f %-9.3f\n", std::string(to_string(c)).c_str(), b.precision, b.recall,
                    m.precision, m.recall);
      }
    } else if (*pii_cmd) {
      json report = read_json(report_path);
      std::vector<json *> reports;
      if (report.contains("reports") && report["reports"].is_array())
        for (auto &r : report["reports"]) reports.push_back(&r);
      else if (report.contains("cases"))
        reports.push_back(&report);
      else
        throw DataError("'" + report_path + "' is not a scan report");
      PiiScanner scanner = PiiScanner::from_data_dir(PLAGDET_DATA_DIR, {cfg.pii_threshold, cfg.pii_name_confidence,
                                                                        cfg.pii_name_fallback_confidence,
                                                                        cfg.pii_location_confidence});
      std::vector<PlagiarismCase> cases;
      json detections = json::array();
      for (json *r : reports) {
        DetectionReport dr = report_from_json(*r);
        for (std::size_t i = 0; i < dr.cases.size(); ++i) {
          const auto &c = dr.cases[i];
          auto ents = scanner.detect(c.qry_text);
          for (const auto &e : ents)
            detections.push_back({{"qry_doc_id", dr.qry_doc_id},
                                  {"case", i},
                                  {"type", std::string(to_string(c.type))},
                                  {"kind", std::string(to_string(e.kind))},
                                  {"text", c.qry_text.substr(e.span.begin, e.span.size())},
                                  {"confidence", e.confidence}});
          if (do_anonymize) (*r)["cases"][i]["qry_text"] = anonymize(c.qry_text, ents);
          cases.push_back(c);
        }
      }
      json out;
      out["pii_summary"] = to_json(pii_summary(cases, scanner));
      out["detections"] = detections;
      if (do_anonymize) out["anonymized_report"] = report;
      write_text(out_path, out.dump(2) + "\n");
      std::cout << "detections: " << detections.size() << "\n";
    }
    return 0;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ServiceError &e) {
    std::cerr << "service error: " << e.what() << "\n";
    return 3;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
