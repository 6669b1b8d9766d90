#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamekg/qa/qa.hpp"
#include "generators.hpp"

namespace gamekg::qa {
namespace {

kg::KnowledgeGraph modified_graph() {
  auto g = testing::case_graph();
  g.upsert_edge("villaman", "violated", "mann-act", kg::HumanProposal{"player-1"});
  return g;
}

TEST(LinkEntities, Examples) {
  const auto g = modified_graph();
  EXPECT_EQ(link_entities("What act did Villaman break?", g), std::vector<std::string>{"villaman"});
  EXPECT_EQ(link_entities("Did Kizer know Villaman?", g),
            (std::vector<std::string>{"kizer", "villaman"}));
  EXPECT_TRUE(link_entities("What happened?", g).empty());
  EXPECT_EQ(link_entities("Is the mann act relevant?", g), std::vector<std::string>{"mann-act"});
}

TEST(LinkEntities, LongestMatchWinsOverlaps) {
  kg::KnowledgeGraph g;
  g.upsert_entity("Ruth", kg::EntityType::person);
  g.upsert_entity("Ruth Bell", kg::EntityType::person);
  g.upsert_entity("Bell Harbor", kg::EntityType::location);
  EXPECT_EQ(link_entities("Where did Ruth Bell Harbor go?", g),
            std::vector<std::string>{"ruth-bell"});
  EXPECT_EQ(link_entities("Ruth met Ruth Bell and Ruth", g),
            (std::vector<std::string>{"ruth", "ruth-bell"}));
}

TEST(LinkEntities, MatchesExhaustiveScanOnSingleTokenNames) {
  kg::KnowledgeGraph g;
  for (const char* n : {"Ann", "Bo", "Cy", "Dee"}) g.upsert_entity(n, kg::EntityType::person);
  std::mt19937_64 rng(31);
  const std::vector<std::string> words = {"ann", "bo", "cy", "dee", "what", "did", "x"};
  for (int i = 0; i < 200; ++i) {
    std::string q;
    std::vector<std::string> want;
    for (std::size_t k = testing::uniform(rng, 0, 6); k > 0; --k) {
      const auto& w = words[rng() % words.size()];
      q += w + " ";
      if (w.size() <= 3 && w != "did" && w != "x" && g.resolve(w) &&
          std::find(want.begin(), want.end(), *g.resolve(w)) == want.end()) {
        want.push_back(*g.resolve(w));
      }
    }
    ASSERT_EQ(link_entities(q, g), want) << q;
  }
}

TEST(NormalizeQuestion, DropsStopWords) {
  EXPECT_EQ(normalize_question("What act did Villaman break?"),
            (std::vector<std::string>{"act", "villaman", "break"}));
}

TEST(Answer, VillamanQuestionAfterProposal) {
  const auto g = modified_graph();
  const auto a = answer(testing::kVillamanQuestion, g);
  EXPECT_EQ(a.status, AnswerStatus::answered);
  EXPECT_EQ(a.answer_text, "Mann Act");
  EXPECT_EQ(a.answer_entity, "mann-act");
  EXPECT_EQ(a.fact_path,
            std::vector<std::string>{kg::make_edge_id("villaman", "violated", "mann-act")});
  EXPECT_DOUBLE_EQ(a.score, 3.0);
}

TEST(Answer, VillamanQuestionOnExtractedGraph) {
  const auto a = answer(testing::kVillamanQuestion, testing::case_graph());
  EXPECT_EQ(a.status, AnswerStatus::not_found);
  EXPECT_EQ(a.answer_text, testing::kRefusalText);
  EXPECT_TRUE(a.fact_path.empty());
  EXPECT_TRUE(a.answer_entity.empty());
}

TEST(Answer, KizerOnOriginalGraph) {
  const auto a = answer("What act did Kizer break?", testing::case_graph());
  EXPECT_EQ(a.status, AnswerStatus::answered);
  EXPECT_EQ(a.answer_text, "Mann Act");
  EXPECT_EQ(a.fact_path,
            std::vector<std::string>{kg::make_edge_id("kizer", "violated", "mann-act")});
}

TEST(Answer, FilteredEdgesAreIgnored) {
  auto g = modified_graph();
  g.set_edge_status(kg::make_edge_id("villaman", "violated", "mann-act"), kg::EdgeStatus::filtered);
  EXPECT_EQ(answer(testing::kVillamanQuestion, g).status, AnswerStatus::not_found);
}

TEST(Answer, TwoHopPathNeedsEveryPredicateToMatch) {
  const auto g = testing::case_graph();
  // villaman -accomplice_to-> kizer -violated-> mann-act: only one predicate
  // is a "break" verb, so the path earns just the type bonus.
  const auto a = answer(testing::kVillamanQuestion, g);
  EXPECT_DOUBLE_EQ(a.score, 1.0);
  const auto helped = answer("Who did Villaman help?", g);
  EXPECT_EQ(helped.status, AnswerStatus::answered);
  EXPECT_EQ(helped.answer_entity, "kizer");
}

TEST(Answer, UnlinkedQuestionIsRefused) {
  const auto a = answer("What happened?", modified_graph());
  EXPECT_EQ(a.status, AnswerStatus::not_found);
  EXPECT_EQ(a.answer_text, testing::kRefusalText);
}

TEST(Answer, CustomSynonymsExtendVerbs) {
  auto g = testing::case_graph();
  EXPECT_EQ(answer("What did Kizer move?", g).status, AnswerStatus::not_found);
  auto table = SynonymTable::defaults();
  table.merge(SynonymTable::from_json({{"verb_synonyms", {{"Move", {"Transported"}}}}}));
  const auto a = answer("What did Kizer move?", g, table);
  EXPECT_EQ(a.status, AnswerStatus::answered);
  EXPECT_EQ(a.answer_entity, "victims");
}

struct Shouting final : AnswerPhraser {
  int calls = 0;
  std::string phrase(std::string_view, const Answer& a) override {
    ++calls;
    return "It was the " + a.answer_text + ".";
  }
};

TEST(Answer, PhraserRewordsOnlyAnsweredResults) {
  Shouting phraser;
  const auto yes = answer(testing::kVillamanQuestion, modified_graph(), SynonymTable::defaults(),
                          {}, &phraser);
  EXPECT_EQ(yes.answer_text, "It was the Mann Act.");
  EXPECT_EQ(yes.fact_path.size(), 1u);
  const auto no = answer(testing::kVillamanQuestion, testing::case_graph(),
                         SynonymTable::defaults(), {}, &phraser);
  EXPECT_EQ(no.answer_text, testing::kRefusalText);
  EXPECT_EQ(phraser.calls, 1);
}

TEST(Answer, JsonShape) {
  const auto j = to_json(answer(testing::kVillamanQuestion, modified_graph()));
  EXPECT_EQ(j["status"], "answered");
  EXPECT_EQ(j["answer"], "Mann Act");
  ASSERT_EQ(j["fact_path"].size(), 1u);
  EXPECT_EQ(j["fact_path"][0]["subject"], "villaman");
  EXPECT_EQ(j["fact_path"][0]["predicate"], "violated");
  EXPECT_EQ(j["fact_path"][0]["object"], "mann-act");
  EXPECT_EQ(j["fact_path"][0]["provenance"]["kind"], "human");
  const auto refusal = to_json(answer("What happened?", modified_graph()));
  EXPECT_EQ(refusal["status"], "not_found");
  EXPECT_EQ(refusal["answer"], testing::kRefusalText);
  EXPECT_TRUE(refusal["fact_path"].empty());
}

TEST(Answer, GroundedAndDeterministicOnRandomGraphs) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 40; ++i) {
    testing::GraphShape shape;
    shape.entities = 12;
    shape.edges = 25;
    shape.filtered_fraction = 0.3;
    const auto g = testing::random_graph(rng, shape).graph;
    auto it = g.entities().begin();
    std::advance(it, rng() % g.entities().size());
    const std::string q = "What act did " + it->second.canonical_name + " break?";
    const auto a = answer(q, g);
    ASSERT_EQ(a, answer(q, g));
    if (a.status == AnswerStatus::not_found) {
      EXPECT_EQ(a.answer_text, testing::kRefusalText);
      continue;
    }
    ASSERT_FALSE(a.fact_path.empty());
    ASSERT_LE(a.fact_path.size(), 2u);
    const auto linked = link_entities(q, g);
    std::string at;
    for (const auto& id : linked) {
      const auto& first = g.edge(a.fact_path.front());
      if (first.subject_id == id || first.object_id == id) at = id;
    }
    ASSERT_FALSE(at.empty());
    for (const auto& id : a.fact_path) {
      const auto& e = g.edge(id);
      ASSERT_TRUE(e.is_active());
      ASSERT_TRUE(e.subject_id == at || e.object_id == at);
      at = e.subject_id == at ? e.object_id : e.subject_id;
    }
    EXPECT_EQ(at, a.answer_entity);
  }
}

}  // namespace
}  // namespace gamekg::qa
