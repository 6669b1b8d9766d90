#include "synthetic.hpp"

#include <random>
#include <vector>

#include "gamekg/ingest/builder.hpp"
#include "gamekg/ingest/extractor.hpp"

namespace gamekg::bench {

namespace {

const std::vector<std::string> kVerbs = {"trafficked", "transported", "recruited", "harbored",
                                         "broke", "was an accomplice to"};

std::string name(std::size_t i) {
  static const char* first[] = {"Ada", "Bram", "Cleo", "Dov", "Esme", "Finn", "Gus", "Hedy"};
  return std::string(first[i % 8]) + " Q" + std::to_string(i);
}

}  // namespace

std::string synthetic_body(std::size_t names, std::size_t sentences, unsigned seed) {
  std::mt19937 rng(seed);
  std::string body;
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::string& verb = kVerbs[rng() % kVerbs.size()];
    const std::string object = verb == "broke" ? "Statute " + std::to_string(rng() % 10) + " Act"
                                               : name(rng() % names);
    body += name(rng() % names) + " " + verb + " " + object + " near the docks. ";
  }
  return body;
}

kg::KnowledgeGraph synthetic_graph(std::size_t names, std::size_t sentences, unsigned seed) {
  const kg::Document doc{"synthetic", "Synthetic", synthetic_body(names, sentences, seed),
                         std::nullopt};
  return ingest::ingest_documents(std::span(&doc, 1), ingest::RuleBasedExtractor());
}

}  // namespace gamekg::bench
