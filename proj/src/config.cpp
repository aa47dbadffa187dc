#include "plagdet/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "plagdet/errors.hpp"
#include "plagdet/parallel.hpp"

extern char **environ;

namespace plagdet {

using nlohmann::json;

unsigned Config::effective_workers() const { return workers == 0 ? default_workers() : workers; }

namespace {

template <typename T>
T convert(const json &v, const std::string &name) {
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw UsageError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw UsageError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw UsageError("");
      if constexpr (std::is_unsigned_v<T>)
        if (v.get<std::int64_t>() < 0 && !v.is_number_unsigned()) throw UsageError("");
    }
    return v.get<T>();
  } catch (const std::exception &) {
    throw UsageError("config key '" + name + "' has the wrong type: " + v.dump());
  }
}

template <typename Access>
ConfigField field(std::string name, std::string help, Access access) {
  using T = std::remove_reference_t<decltype(access(std::declval<Config &>()))>;
  ConfigField f;
  f.name = name;
  f.help = std::move(help);
  f.set = [access, name](Config &c, const json &v) { access(c) = convert<T>(v, name); };
  f.get = [access](const Config &c) { return json(access(const_cast<Config &>(c))); };
  return f;
}

std::vector<ConfigField> make_fields() {
  std::vector<ConfigField> f;
  f.push_back(field("schema_version", "config format version", [](Config &c) -> auto & { return c.schema_version; }));
  f.push_back(field("n_prime", "candidates retrieved per query document", [](Config &c) -> auto & { return c.n_prime; }));
  f.push_back(field("bm25_k1", "BM25 term saturation", [](Config &c) -> auto & { return c.bm25.k1; }));
  f.push_back(field("bm25_b", "BM25 length normalization", [](Config &c) -> auto & { return c.bm25.b; }));
  f.push_back(field("verbatim_min_chars", "minimum verbatim run in code points", [](Config &c) -> auto & { return c.verbatim_min_chars; }));
  f.push_back(field("seed_cosine", "primary seed cosine threshold", [](Config &c) -> auto & { return c.align.primary.cos_min; }));
  f.push_back(field("seed_dice", "primary seed Dice threshold", [](Config &c) -> auto & { return c.align.primary.dice_min; }));
  f.push_back(field("max_gap", "primary extension gap in sentences", [](Config &c) -> auto & { return c.align.primary.max_gap; }));
  f.push_back(field("summary_seed_cosine", "summary seed cosine threshold", [](Config &c) -> auto & { return c.align.summary.cos_min; }));
  f.push_back(field("summary_seed_dice", "summary seed Dice threshold", [](Config &c) -> auto & { return c.align.summary.dice_min; }));
  f.push_back(field("summary_max_gap", "summary extension gap in sentences", [](Config &c) -> auto & { return c.align.summary.max_gap; }));
  f.push_back(field("min_fragment_chars", "minimum fragment side in code points", [](Config &c) -> auto & { return c.align.min_fragment_chars; }));
  f.push_back(field("ratio_threshold", "sentence ratio for idea cases", [](Config &c) -> auto & { return c.ratio_threshold; }));
  f.push_back(field("near_duplicate_distance", "normalized edit distance treated as a copy", [](Config &c) -> auto & { return c.near_duplicate_distance; }));
  f.push_back(field("paraphrase_min", "exclusive lower bound of the accepted score band", [](Config &c) -> auto & { return c.band.lower; }));
  f.push_back(field("paraphrase_max", "exclusive upper bound of the accepted score band", [](Config &c) -> auto & { return c.band.upper; }));
  f.push_back(field("lexical_jaccard_weight", "builtin scorer Jaccard weight", [](Config &c) -> auto & { return c.lexical.jaccard; }));
  f.push_back(field("lexical_cosine_weight", "builtin scorer cosine weight", [](Config &c) -> auto & { return c.lexical.cosine; }));
  f.push_back(field("lexical_order_weight", "builtin scorer word-order weight", [](Config &c) -> auto & { return c.lexical.order; }));
  f.push_back(field("scorer", "paraphrase scorer: builtin or external", [](Config &c) -> auto & { return c.scorer; }));
  f.push_back(field("entities", "entity extractor: builtin or external", [](Config &c) -> auto & { return c.entities; }));
  f.push_back(field("service_url", "model service base URL", [](Config &c) -> auto & { return c.service_url; }));
  f.push_back(field("service_timeout_ms", "per-request service timeout", [](Config &c) -> auto & { return c.service_timeout_ms; }));
  f.push_back(field("service_max_in_flight", "concurrent service requests", [](Config &c) -> auto & { return c.service_max_in_flight; }));
  f.push_back(field("lm_order", "builtin language model order", [](Config &c) -> auto & { return c.lm_order; }));
  f.push_back(field("lm_add_k", "builtin language model add-k constant", [](Config &c) -> auto & { return c.lm_add_k; }));
  f.push_back(field("corpus_window", "corpus perplexity window in tokens", [](Config &c) -> auto & { return c.corpus_window; }));
  f.push_back(field("corpus_stride", "corpus perplexity stride in tokens", [](Config &c) -> auto & { return c.corpus_stride; }));
  f.push_back(field("doc_window", "per-document perplexity window", [](Config &c) -> auto & { return c.doc_window; }));
  f.push_back(field("doc_stride", "per-document perplexity stride", [](Config &c) -> auto & { return c.doc_stride; }));
  f.push_back(field("filter_fraction", "fraction removed by the perplexity filter", [](Config &c) -> auto & { return c.filter_fraction; }));
  f.push_back(field("dedup_threshold", "cosine above which documents are duplicates", [](Config &c) -> auto & { return c.dedup_threshold; }));
  f.push_back(field("similarity_sample_cap", "corpus size above which pairs are sampled", [](Config &c) -> auto & { return c.similarity_sample_cap; }));
  f.push_back(field("similarity_sample_pairs", "pairs drawn when sampling", [](Config &c) -> auto & { return c.similarity_sample_pairs; }));
  f.push_back(field("pii_threshold", "minimum PII confidence", [](Config &c) -> auto & { return c.pii_threshold; }));
  f.push_back(field("pii_name_confidence", "person name with a known first name", [](Config &c) -> auto & { return c.pii_name_confidence; }));
  f.push_back(field("pii_name_fallback_confidence", "other capitalized name pairs", [](Config &c) -> auto & { return c.pii_name_fallback_confidence; }));
  f.push_back(field("pii_location_confidence", "gazetteer location", [](Config &c) -> auto & { return c.pii_location_confidence; }));
  f.push_back(field("excerpt_chars", "verbatim excerpt length", [](Config &c) -> auto & { return c.excerpt_chars; }));
  f.push_back(field("paraphrase_sentences", "sentences per paraphrase pair", [](Config &c) -> auto & { return c.paraphrase_sentences; }));
  f.push_back(field("paraphrase_rate", "synonym substitution rate for paraphrase pairs", [](Config &c) -> auto & { return c.paraphrase_rate; }));
  f.push_back(field("idea_rate", "synonym substitution rate for idea pairs", [](Config &c) -> auto & { return c.idea_rate; }));
  f.push_back(field("negative_max_cosine", "cosine bound for unrelated pairs", [](Config &c) -> auto & { return c.negative_max_cosine; }));
  f.push_back(field("thesaurus", "synonym file", [](Config &c) -> auto & { return c.thesaurus; }));
  f.push_back(field("workers", "worker threads, 0 for all CPUs", [](Config &c) -> auto & { return c.workers; }));
  f.push_back(field("seed", "random seed", [](Config &c) -> auto & { return c.seed; }));
  return f;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const std::vector<ConfigField> &config_fields() {
  static const std::vector<ConfigField> fields = make_fields();
  return fields;
}

json to_json(const Config &cfg) {
  json j = json::object();
  for (const auto &f : config_fields()) j[f.name] = f.get(cfg);
  return j;
}

void apply_json(Config &cfg, const json &j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto &[key, value] : j.items()) {
    auto it = std::find_if(config_fields().begin(), config_fields().end(),
                           [&](const ConfigField &f) { return f.name == key; });
    if (it == config_fields().end()) throw UsageError("unknown config key '" + key + "'");
    it->set(cfg, value);
  }
  if (cfg.schema_version != kConfigSchemaVersion)
    throw UsageError("unsupported config schema_version " + std::to_string(cfg.schema_version));
}

Config load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error &e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  Config cfg;
  apply_json(cfg, j);
  return cfg;
}

void apply_env(Config &cfg, const std::map<std::string, std::string> *env) {
  std::map<std::string, std::string> process_env;
  if (!env) {
    for (char **e = environ; e && *e; ++e) {
      std::string_view kv(*e);
      auto eq = kv.find('=');
      if (eq != std::string_view::npos) process_env.emplace(kv.substr(0, eq), kv.substr(eq + 1));
    }
    env = &process_env;
  }
  for (const auto &f : config_fields()) {
    auto it = env->find(std::string(kEnvPrefix) + upper(f.name));
    if (it == env->end()) continue;
    json v = json::parse(it->second, nullptr, false);
    if (v.is_discarded() || (f.get(cfg).is_string() && !v.is_string())) v = it->second;
    f.set(cfg, v);
  }
  // PLAGDET_FORCE_SCALAR selects kernels, not a config key.
  for (const auto &[k, v] : *env) {
    if (k.rfind(kEnvPrefix, 0) != 0 || k == "PLAGDET_FORCE_SCALAR") continue;
    bool known = std::any_of(config_fields().begin(), config_fields().end(), [&](const ConfigField &f) {
      return std::string(kEnvPrefix) + upper(f.name) == k;
    });
    if (!known) throw UsageError("unknown environment override '" + k + "'");
  }
  if (cfg.schema_version != kConfigSchemaVersion)
    throw UsageError("unsupported config schema_version " + std::to_string(cfg.schema_version));
}

void check(const Config &c) {
  auto require = [](bool ok, const std::string &msg) {
    if (!ok) throw UsageError(msg);
  };
  require(c.n_prime >= 1, "n_prime must be at least 1");
  require(c.bm25.k1 >= 0 && c.bm25.b >= 0 && c.bm25.b <= 1, "bm25 parameters out of range");
  require(c.verbatim_min_chars >= 1, "verbatim_min_chars must be positive");
  for (const auto &t : {c.align.primary, c.align.summary})
    require(t.cos_min >= 0 && t.cos_min <= 1 && t.dice_min >= 0 && t.dice_min <= 1,
            "seed thresholds must be in [0, 1]");
  require(c.near_duplicate_distance >= 0 && c.near_duplicate_distance <= 1,
          "near_duplicate_distance must be in [0, 1]");
  require(c.ratio_threshold >= 1.0, "ratio_threshold must be at least 1");
  require(c.band.lower >= 0 && c.band.upper <= 1 && c.band.lower < c.band.upper,
          "paraphrase band must satisfy 0 <= paraphrase_min < paraphrase_max <= 1");
  require(c.scorer == "builtin" || c.scorer == "external", "scorer must be builtin or external");
  require(c.entities == "builtin" || c.entities == "external", "entities must be builtin or external");
  require(c.service_timeout_ms > 0, "service_timeout_ms must be positive");
  require(c.lm_order >= 1, "lm_order must be at least 1");
  require(c.lm_add_k > 0, "lm_add_k must be positive");
  require(c.corpus_window >= 1 && c.corpus_stride >= 1 && c.corpus_stride <= c.corpus_window,
          "corpus stride must be in [1, corpus_window]");
  require(c.doc_window >= 1 && c.doc_stride >= 1 && c.doc_stride <= c.doc_window,
          "doc stride must be in [1, doc_window]");
  require(c.filter_fraction > 0 && c.filter_fraction < 1, "filter_fraction must be in (0, 1)");
  require(c.dedup_threshold > 0 && c.dedup_threshold <= 1, "dedup_threshold must be in (0, 1]");
  require(c.pii_threshold >= 0 && c.pii_threshold <= 1, "pii_threshold must be in [0, 1]");
  require(c.paraphrase_rate >= 0 && c.paraphrase_rate <= 1, "paraphrase_rate must be in [0, 1]");
  require(c.idea_rate >= 0 && c.idea_rate <= 1, "idea_rate must be in [0, 1]");
}

std::string describe_defaults() {
  Config defaults;
  std::ostringstream out;
  for (const auto &f : config_fields()) {
    std::string line = "  " + f.name + " = " + f.get(defaults).dump();
    if (line.size() < 44) line.resize(44, ' ');
    out << line << "  " << f.help << "\n";
  }
  return out.str();
}

}  // namespace plagdet
