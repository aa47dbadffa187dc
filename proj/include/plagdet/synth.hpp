#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plagdet/corpus.hpp"

namespace plagdet {

// Deterministic topical seed corpus: documents of 10 to 24 sentences, each
// under 150 characters, mixing a primary topic with occasional sentences
// from others, with names, places, dates and numbers.
Corpus synthesize_corpus(std::size_t n_docs, std::uint64_t seed);

// Topic names and the lowercase content words used for each.
struct SynthTopic {
  std::string name;
  std::vector<std::string> words;
};
std::vector<SynthTopic> synth_topics();

std::string pluralize(std::string_view noun);

}  // namespace plagdet
