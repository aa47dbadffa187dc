#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plagdet/align.hpp"
#include "plagdet/index.hpp"
#include "plagdet/validators.hpp"

namespace plagdet {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr std::string_view kEnvPrefix = "PLAGDET_";

struct Config {
  int schema_version = kConfigSchemaVersion;

  // retrieval
  std::size_t n_prime = 10;
  Bm25Params bm25;

  // alignment and classification
  std::size_t verbatim_min_chars = 256;
  AlignParams align;
  double ratio_threshold = 2.0;
  double near_duplicate_distance = 0.02;

  // validation
  ValidationBand band;
  LexicalWeights lexical;
  std::string scorer = "builtin";    // builtin | external
  std::string entities = "builtin";  // builtin | external
  std::string service_url = "http://127.0.0.1:8765";
  int service_timeout_ms = 10000;
  unsigned service_max_in_flight = 4;

  // metrics
  std::size_t lm_order = 3;
  double lm_add_k = 0.1;
  std::size_t corpus_window = 512;
  std::size_t corpus_stride = 512;
  std::size_t doc_window = 50;
  std::size_t doc_stride = 50;
  double filter_fraction = 0.30;
  double dedup_threshold = 0.8;
  std::size_t similarity_sample_cap = 2000;
  std::size_t similarity_sample_pairs = 200000;

  // pii
  double pii_threshold = 0.7;
  double pii_name_confidence = 0.75;
  double pii_name_fallback_confidence = 0.5;
  double pii_location_confidence = 0.75;

  // evaluation
  std::size_t excerpt_chars = 500;
  std::size_t paraphrase_sentences = 5;
  double paraphrase_rate = 0.30;
  double idea_rate = 0.15;
  double negative_max_cosine = 0.2;
  std::string thesaurus = PLAGDET_DATA_DIR "/thesaurus.txt";

  unsigned workers = 0;  // 0: all available CPUs
  std::uint64_t seed = 42;

  unsigned effective_workers() const;
};

struct ConfigField {
  std::string name;
  std::string help;
  std::function<void(Config &, const nlohmann::json &)> set;
  std::function<nlohmann::json(const Config &)> get;
};

const std::vector<ConfigField> &config_fields();

nlohmann::json to_json(const Config &cfg);

// Applies keys from a JSON object. Unknown keys, wrong types and schema
// mismatches raise UsageError.
void apply_json(Config &cfg, const nlohmann::json &j);
Config load_config(const std::string &path);

// PLAGDET_<UPPERCASE_KEY> values, parsed as JSON when possible and as a raw
// string otherwise. `env` defaults to the process environment.
void apply_env(Config &cfg, const std::map<std::string, std::string> *env = nullptr);

// Range checks; throws UsageError.
void check(const Config &cfg);

// "name = default  help" lines for every key.
std::string describe_defaults();

}  // namespace plagdet
