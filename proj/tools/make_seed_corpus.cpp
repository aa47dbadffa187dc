#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plagdet/corpus.hpp"
#include "plagdet/errors.hpp"
#include "plagdet/synth.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Write a deterministic synthetic seed corpus as JSONL"};
  std::size_t n = 600;
  std::uint64_t seed = 7;
  std::string out;
  app.add_option("--n", n, "number of documents")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", out, "output file")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    plagdet::save_corpus(out, plagdet::synthesize_corpus(n, seed));
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << "documents: " << n << "\n";
  return 0;
}
