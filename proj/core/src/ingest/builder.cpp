#include "gamekg/ingest/builder.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gamekg/error.hpp"
#include "gamekg/text.hpp"

namespace gamekg::ingest {

namespace {

const std::set<std::string, std::less<>> kStatuteKeywords = {
    "act", "code", "statute", "law", "amendment", "ordinance"};

const std::set<std::string, std::less<>> kOrganizationKeywords = {
    "department", "office",     "inc",     "llc",    "corp", "corporation",
    "company",    "agency",     "bureau",  "court",  "police", "bank",
    "university", "association"};

}  // namespace

kg::EntityType infer_entity_type(std::string_view surface) {
  const std::string trimmed = text::trim(surface);
  if (trimmed.empty() || !(trimmed.front() >= 'A' && trimmed.front() <= 'Z')) {
    return kg::EntityType::other;
  }
  const auto tokens = text::word_tokens(trimmed);
  if (tokens.size() > 1) {
    for (const auto& t : tokens) {
      if (kStatuteKeywords.contains(t)) return kg::EntityType::statute;
    }
    for (const auto& t : tokens) {
      if (kOrganizationKeywords.contains(t)) return kg::EntityType::organization;
    }
  }
  return kg::EntityType::person;
}

void add_triples(kg::KnowledgeGraph& graph, std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const auto& t : triples) {
    const std::optional<std::string_view> doc =
        t.doc_id.empty() ? std::nullopt : std::optional<std::string_view>(t.doc_id);
    const auto subject = graph.upsert_entity(t.subject_surface,
                                             infer_entity_type(t.subject_surface), doc);
    const auto object = graph.upsert_entity(t.object_surface,
                                            infer_entity_type(t.object_surface), doc);
    graph.upsert_edge(subject, t.predicate, object,
                      kg::ExplicitSource{t.doc_id.empty() ? "unknown" : t.doc_id,
                                         t.sentence_index});
  }
}

kg::KnowledgeGraph build_kg(std::vector<Triple> triples) {
  kg::KnowledgeGraph graph;
  add_triples(graph, std::move(triples));
  return graph;
}

std::vector<Triple> extract_document(const kg::Document& document,
                                     const TripleExtractor& extractor) {
  std::vector<Triple> out;
  for (const auto& sentence : split_sentences(document.body)) {
    auto triples = extractor.extract(sentence, document.id);
    out.insert(out.end(), std::make_move_iterator(triples.begin()),
               std::make_move_iterator(triples.end()));
  }
  return out;
}

kg::KnowledgeGraph ingest_documents(std::span<const kg::Document> documents,
                                    const TripleExtractor& extractor) {
  kg::KnowledgeGraph graph;
  std::vector<Triple> triples;
  for (const auto& document : documents) {
    graph.add_document(document);
    auto extracted = extract_document(document, extractor);
    triples.insert(triples.end(), std::make_move_iterator(extracted.begin()),
                   std::make_move_iterator(extracted.end()));
  }
  add_triples(graph, std::move(triples));
  return graph;
}

kg::Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open document " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  kg::Document document;
  if (path.extension() == ".json") {
    try {
      const auto j = nlohmann::json::parse(content);
      document.id = j.at("id").get<std::string>();
      document.title = j.value("title", "");
      document.body = j.at("body").get<std::string>();
      if (auto it = j.find("source_uri"); it != j.end() && !it->is_null()) {
        document.source_uri = it->get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, path.string() + ": " + e.what());
    }
  } else {
    document.id = text::slugify(path.stem().string());
    document.title = path.stem().string();
    document.body = content;
    document.source_uri = path.string();
  }
  if (document.id.empty()) fail(ErrorCode::validation, path.string() + ": document id is empty");
  if (text::trim(document.body).empty()) {
    fail(ErrorCode::validation, path.string() + ": document body is empty");
  }
  return document;
}

}  // namespace gamekg::ingest
