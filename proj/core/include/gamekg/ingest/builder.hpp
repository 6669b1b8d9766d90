#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "gamekg/ingest/extractor.hpp"
#include "gamekg/kg/graph.hpp"

namespace gamekg::ingest {

/// Multi-token capitalized names containing a statute keyword ("Act",
/// "Code", ...) are statutes, ones containing an organization keyword
/// ("Department", "Inc", ...) are organizations, other capitalized names are
/// persons and lowercase surfaces are `other`.
kg::EntityType infer_entity_type(std::string_view surface);

/// Upserts both endpoints and one Explicit edge per triple. Triples are
/// applied in sorted order, so the result does not depend on input order.
void add_triples(kg::KnowledgeGraph& graph, std::vector<Triple> triples);

kg::KnowledgeGraph build_kg(std::vector<Triple> triples);

std::vector<Triple> extract_document(const kg::Document& document,
                                     const TripleExtractor& extractor);

/// Documents are stored in the graph so scoring can recover source sentences.
kg::KnowledgeGraph ingest_documents(std::span<const kg::Document> documents,
                                    const TripleExtractor& extractor);

/// `.json` files hold {"id","title","body","source_uri"}; anything else is
/// plain text whose id is the slug of the file stem.
kg::Document load_document(const std::filesystem::path& path);

}  // namespace gamekg::ingest
