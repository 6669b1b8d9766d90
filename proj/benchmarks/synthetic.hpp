#pragma once

#include <cstddef>
#include <string>

#include "gamekg/kg/graph.hpp"

namespace gamekg::bench {

/// Ingested graph over `sentences` generated "Name verb Name." sentences
/// drawn from `names` distinct people.
kg::KnowledgeGraph synthetic_graph(std::size_t names, std::size_t sentences, unsigned seed = 1);

/// One document body of `sentences` sentences in the same style.
std::string synthetic_body(std::size_t names, std::size_t sentences, unsigned seed = 1);

}  // namespace gamekg::bench
