#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "error_code.hpp"
#include "fixtures.hpp"
#include "gamekg/narrative/narrative.hpp"
#include "gamekg/narrative/pseudonyms.hpp"
#include "gamekg/text.hpp"
#include "generators.hpp"

namespace gamekg::narrative {
namespace {

using testing::code_of;

NamePools tiny_pools() {
  return NamePools::from_json({{"person", {"Ada Quill", "Bo Reed", "Kizer Moss"}},
                               {"statute", {"Harbor Act"}},
                               {"other", {"parcel", "ledger"}}});
}

TEST(Pseudonyms, DeterministicPerSeedAndCovering) {
  const auto g = testing::case_graph();
  const auto a = make_pseudonyms(g, 42);
  const auto b = make_pseudonyms(g, 42);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.covers(g));
  std::set<std::string> distinct;
  for (const auto& [id, name] : a.names) distinct.insert(name);
  EXPECT_EQ(distinct.size(), g.entities().size());

  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) differs = make_pseudonyms(g, s) != a;
  EXPECT_TRUE(differs);
}

TEST(Pseudonyms, TypedPoolsAndLeakFilter) {
  const auto g = testing::case_graph();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = make_pseudonyms(g, seed, tiny_pools());
    // "Kizer Moss" contains a real name and must never be drawn.
    EXPECT_NE(p.at("kizer"), "Kizer Moss");
    EXPECT_NE(p.at("villaman"), "Kizer Moss");
    EXPECT_EQ(p.at("mann-act"), "Harbor Act");
    EXPECT_TRUE(p.at("victims") == "parcel" || p.at("victims") == "ledger");
  }
}

TEST(Pseudonyms, ExhaustionNamesTheType) {
  kg::KnowledgeGraph g;
  for (const char* n : {"Ann", "Ben", "Cy", "Dee"}) g.upsert_entity(n, kg::EntityType::person);
  try {
    make_pseudonyms(g, 1, tiny_pools());
    FAIL() << "expected pool exhaustion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::pool_exhausted);
    EXPECT_NE(std::string(e.what()).find("person"), std::string::npos);
  }
  g = {};
  g.upsert_entity("Dock", kg::EntityType::location);
  EXPECT_EQ(code_of([&] { make_pseudonyms(g, 1, tiny_pools()); }), ErrorCode::pool_exhausted);
  EXPECT_EQ(code_of([&] { make_pseudonyms(kg::KnowledgeGraph{}, 1); }), ErrorCode::validation);
}

TEST(Pseudonyms, ShippedPoolSizes) {
  const auto& pools = NamePools::defaults();
  EXPECT_EQ(pools.pool(kg::EntityType::person).size(), 80u);
  EXPECT_EQ(pools.pool(kg::EntityType::statute).size(), 24u);
  EXPECT_EQ(pools.pool(kg::EntityType::organization).size(), 24u);
  EXPECT_EQ(pools.pool(kg::EntityType::location).size(), 24u);
  EXPECT_EQ(pools.pool(kg::EntityType::other).size(), 48u);
}

TEST(Template, CaseGraphNarrative) {
  const auto g = testing::case_graph();
  PseudonymMap p;
  p.names = {{"kizer", "Victor Kane"}, {"villaman", "Ruth Bell"}, {"mann-act", "Harbor Act"},
             {"victims", "parcels"}};
  const auto n = generate_narrative(g, p);
  EXPECT_EQ(n.provider_used, NarrativeSource::template_text);
  EXPECT_EQ(n.external_attempts, 0u);
  EXPECT_EQ(n.case_text,
            "A new case file has landed on your desk. Victor Kane transported parcels. "
            "Victor Kane violated Harbor Act. Ruth Bell was an accomplice to Victor Kane.");
  ASSERT_EQ(n.sentence_spans.size(), 3u);
  EXPECT_EQ(n.sentence_spans[0],
            (RelationSentence{kg::make_edge_id("kizer", "transported", "victims"), 1}));
  EXPECT_EQ(n.sentence_spans[2],
            (RelationSentence{kg::make_edge_id("villaman", "accomplice_to", "kizer"), 3}));
}

TEST(Template, MissingPseudonymIsValidationError) {
  const auto g = testing::case_graph();
  PseudonymMap p;
  p.names = {{"kizer", "Victor Kane"}};
  EXPECT_EQ(code_of([&] { generate_narrative(g, p); }), ErrorCode::validation);
}

TEST(Validation, FlagsMissingRelationsAndLeaks) {
  const auto g = testing::case_graph();
  PseudonymMap p;
  p.names = {{"kizer", "Victor Kane"}, {"villaman", "Ruth Bell"}, {"mann-act", "Harbor Act"},
             {"victims", "parcels"}};
  const auto r = validate_narrative(
      "Victor Kane moved parcels. He broke the Harbor Act. Ruth Bell helped victor kane, "
      "said Kizer.",
      g, p);
  EXPECT_EQ(r.missing_relations,
            std::vector<std::string>{kg::make_edge_id("kizer", "violated", "mann-act")});
  EXPECT_EQ(r.leaked_names, std::vector<std::string>{"Kizer"});
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.relations.size(), 2u);
}

TEST(Validation, WordBoundariesAvoidFalseLeaks) {
  kg::KnowledgeGraph g;
  g.upsert_entity("Ann", kg::EntityType::person);
  g.upsert_entity("Bo", kg::EntityType::person);
  g.upsert_edge("ann", "met", "bo", kg::ExplicitSource{"d", 0});
  PseudonymMap p;
  p.names = {{"ann", "Joanna Ray"}, {"bo", "Boris Lee"}};
  EXPECT_TRUE(validate_narrative("Joanna Ray met Boris Lee at the annex.", g, p).ok());
}

TEST(External, ValidReplyIsUsed) {
  const auto g = testing::case_graph();
  const auto p = make_pseudonyms(g, 9);
  const std::string reply = p.at("kizer") + " moved " + p.at("victims") + " while " +
                            p.at("villaman") + " helped " + p.at("kizer") + " flout " +
                            p.at("mann-act") + ".";
  RecordedTranscript transcript;
  transcript.record(render_prompt(g, p), reply);
  const auto n = generate_narrative(g, p, &transcript);
  EXPECT_EQ(n.provider_used, NarrativeSource::external);
  EXPECT_EQ(n.case_text, reply);
  EXPECT_EQ(n.external_attempts, 1u);
  EXPECT_EQ(transcript.prompts_seen().size(), 1u);
}

TEST(External, RetryThenFallback) {
  const auto g = testing::case_graph();
  const auto p = make_pseudonyms(g, 9);
  const std::string good = p.at("kizer") + " moved " + p.at("victims") + ". " + p.at("kizer") +
                           " broke " + p.at("mann-act") + ". " + p.at("villaman") + " aided " +
                           p.at("kizer") + ".";

  RecordedTranscript retry({"Kizer did it.", good});
  const auto second = generate_narrative(g, p, &retry);
  EXPECT_EQ(second.provider_used, NarrativeSource::external);
  EXPECT_EQ(second.external_attempts, 2u);

  RecordedTranscript bad({"Kizer did it.", "Nothing to see."});
  const auto fallback = generate_narrative(g, p, &bad);
  EXPECT_EQ(fallback.provider_used, NarrativeSource::template_text);
  EXPECT_EQ(fallback.external_attempts, 2u);
  EXPECT_EQ(fallback.case_text, generate_narrative(g, p).case_text);

  RecordedTranscript silent;  // throws on every call
  EXPECT_EQ(generate_narrative(g, p, &silent).provider_used, NarrativeSource::template_text);
}

TEST(External, TranscriptFile) {
  const auto path = std::filesystem::temp_directory_path() / "gamekg-transcript-test.json";
  {
    std::ofstream out(path);
    out << R"([{"prompt": "p1", "response": "r1"}])";
  }
  auto t = RecordedTranscript::load(path);
  EXPECT_EQ(t->generate("p1", std::chrono::milliseconds(10)), "r1");
  EXPECT_THROW(t->generate("p2", std::chrono::milliseconds(10)), Error);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { RecordedTranscript::load(path); }), ErrorCode::io);
}

TEST(Prompt, ListsEveryActiveRelation) {
  auto g = testing::case_graph();
  g.upsert_edge("villaman", "met", "victims", kg::HumanProposal{"p"}, kg::EdgeStatus::filtered);
  PseudonymMap p;
  p.names = {{"kizer", "Victor Kane"}, {"villaman", "Ruth Bell"}, {"mann-act", "Harbor Act"},
             {"victims", "parcels"}};
  const auto prompt = render_prompt(g, p);
  EXPECT_NE(prompt.find("- Victor Kane | violated | Harbor Act\n"), std::string::npos);
  EXPECT_NE(prompt.find("- Ruth Bell | was an accomplice to | Victor Kane\n"), std::string::npos);
  EXPECT_EQ(prompt.find(" met "), std::string::npos);
  EXPECT_EQ(prompt.find("Kizer"), std::string::npos);
}

TEST(Template, RandomSubgraphsValidate) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    testing::GraphShape shape;
    shape.entities = testing::uniform(rng, 2, 12);
    shape.edges = testing::uniform(rng, 1, 20);
    shape.self_loops = true;
    const auto g = testing::random_graph(rng, shape).graph;
    const auto p = make_pseudonyms(g, rng());
    const auto n = generate_narrative(g, p);
    const auto r = validate_narrative(n.case_text, g, p);
    ASSERT_TRUE(r.ok());
    std::size_t active = 0;
    for (const auto& [id, e] : g.edges()) active += e.is_active();
    EXPECT_EQ(n.sentence_spans.size(), active);
  }
}

}  // namespace
}  // namespace gamekg::narrative
