#include <random>
#include <regex>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gamekg/kg/dot.hpp"
#include "generators.hpp"

namespace gamekg::kg {
namespace {

TEST(Dot, ModifiedCaseGraph) {
  auto g = testing::case_graph();
  g.upsert_edge("villaman", "violated", "mann-act", HumanProposal{"player-1"});
  const auto hidden =
      g.upsert_edge("victims", "met", "kizer", HumanProposal{"player-2"}, EdgeStatus::filtered);
  const std::string dot = export_dot(g);

  const auto line = [](const std::string& s, const std::string& p, const std::string& o,
                       const std::string& style) {
    return "  \"" + s + "\" -> \"" + o + "\" [id=\"" + make_edge_id(s, p, o) + "\", label=\"" +
           p + "\", style=" + style + "];\n";
  };
  EXPECT_NE(dot.find(line("kizer", "transported", "victims", "solid")), std::string::npos) << dot;
  EXPECT_NE(dot.find(line("kizer", "violated", "mann-act", "solid")), std::string::npos);
  EXPECT_NE(dot.find(line("villaman", "accomplice_to", "kizer", "solid")), std::string::npos);
  EXPECT_NE(dot.find(line("villaman", "violated", "mann-act", "dashed")), std::string::npos);
  EXPECT_EQ(dot.find(hidden.edge_id), std::string::npos);
  EXPECT_NE(dot.find("  \"mann-act\" [label=\"Mann Act\"];\n"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph knowledge_graph {\n", 0), 0u);
  EXPECT_EQ(dot.substr(dot.size() - 2), "}\n");
}

TEST(Dot, QuotesAndBackslashesAreEscaped) {
  KnowledgeGraph g;
  g.upsert_entity("A \"Quoted\" Name", EntityType::person);
  const std::string dot = export_dot(g);
  EXPECT_NE(dot.find(R"([label="A \"Quoted\" Name"])"), std::string::npos) << dot;
}

TEST(Dot, EdgeStylesPartitionActiveEdges) {
  std::mt19937_64 rng(5);
  const std::regex edge_line(R"re(^  "[^"]+" -> "[^"]+" \[id="([0-9a-f]{16})", label="[^"]+", style=(solid|dashed)\];$)re");
  for (int i = 0; i < 20; ++i) {
    testing::GraphShape shape;
    shape.entities = 15;
    shape.edges = 30;
    shape.human_fraction = 0.5;
    shape.filtered_fraction = 0.3;
    const auto g = testing::random_graph(rng, shape).graph;
    std::set<std::string> solid, dashed;
    std::istringstream in(export_dot(g));
    for (std::string l; std::getline(in, l);) {
      std::smatch m;
      if (std::regex_match(l, m, edge_line)) (m[2] == "solid" ? solid : dashed).insert(m[1]);
    }
    std::set<std::string> want_solid, want_dashed;
    for (const auto& [id, e] : g.edges()) {
      if (!e.is_active()) continue;
      (e.is_human_proposed() ? want_dashed : want_solid).insert(id);
    }
    ASSERT_EQ(solid, want_solid);
    ASSERT_EQ(dashed, want_dashed);
  }
}

}  // namespace
}  // namespace gamekg::kg
