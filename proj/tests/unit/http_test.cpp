#include <regex>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "fixtures.hpp"
#include "gamekg/app/server.hpp"
#include "gamekg/app/service.hpp"
#include "gamekg/kg/jsonl.hpp"
#include "gamekg/qa/qa.hpp"

namespace gamekg::app {
namespace {

using nlohmann::json;

constexpr const char* kToken = "op-token-123";

ServerConfig http_config(bool qa_gated = false) {
  ServerConfig c;
  c.strategy = CaseStrategy::random;
  c.seed = 77;
  c.operator_token = kToken;
  c.qa_requires_operator = qa_gated;
  return c;
}

class HttpTest : public ::testing::Test {
 protected:
  void start(ServerConfig config, kg::KnowledgeGraph graph = testing::case_graph()) {
    server.reset();
    service = std::make_unique<CurationService>(std::move(config), std::move(graph),
                                                std::vector<feedback::FeedbackEvent>{});
    server = std::make_unique<ApiServer>(*service);
    port = server->bind("127.0.0.1", 0);
    thread = std::thread([this] { server->serve(); });
    server->wait_until_ready();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
  }

  void SetUp() override { start(http_config()); }

  void TearDown() override {
    server->stop();
    if (thread.joinable()) thread.join();
  }

  httplib::Headers operator_headers() const { return {{"Authorization", std::string("Bearer ") + kToken}}; }

  json get_json(const std::string& path, int want_status = 200, httplib::Headers headers = {}) {
    auto res = client->Get(path, headers);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want_status) << path << ": " << res->body;
    EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
    return json::parse(res->body);
  }

  json post_json(const std::string& path, const json& body, int want_status = 200,
                 httplib::Headers headers = {}) {
    auto res = client->Post(path, headers, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want_status) << path << ": " << res->body;
    return json::parse(res->body);
  }

  std::string token(const json& view, const std::string& entity_id) {
    return service->find_case(view["case_id"].get<std::string>())->by_entity(entity_id)->token;
  }

  json feedback(const json& view, std::string event_id, std::string player, std::string action,
                const std::string& s, const std::string& p, const std::string& o) {
    return {{"event_id", std::move(event_id)}, {"case_id", view["case_id"]},
            {"player_id", std::move(player)},  {"action", std::move(action)},
            {"source_token", token(view, s)},  {"target_token", token(view, o)},
            {"predicate", p}};
  }

  std::unique_ptr<CurationService> service;
  std::unique_ptr<ApiServer> server;
  std::unique_ptr<httplib::Client> client;
  std::thread thread;
  int port = 0;
};

// Real names, aliases, entity ids and edge ids of the served graph.
std::vector<std::string> secrets(const kg::KnowledgeGraph& g) {
  std::vector<std::string> out;
  for (const auto& [id, e] : g.entities()) {
    out.push_back(id);
    out.insert(out.end(), e.aliases.begin(), e.aliases.end());
  }
  for (const auto& [id, e] : g.edges()) out.push_back(id);
  return out;
}

void expect_no_secrets(const std::string& body, const kg::KnowledgeGraph& g) {
  for (const auto& s : secrets(g)) {
    const std::regex word("(^|[^A-Za-z0-9])" + s + "($|[^A-Za-z0-9])", std::regex::icase);
    EXPECT_FALSE(std::regex_search(body, word)) << "'" << s << "' leaked in " << body;
  }
}

TEST_F(HttpTest, CaseNextMatchesServiceState) {
  const json view = get_json("/api/v1/case/next");
  const auto c = service->find_case(view["case_id"].get<std::string>());
  ASSERT_TRUE(c);
  json want = client_view(*c);
  want["ttl_seconds"] = 24 * 60 * 60;
  EXPECT_EQ(view, json(want));
  expect_no_secrets(view.dump(), service->graph_snapshot());
}

TEST_F(HttpTest, FeedbackFlowAnswersVillamanQuestion) {
  const json view = get_json("/api/v1/case/next");
  const json q = {{"question", testing::kVillamanQuestion}};
  EXPECT_EQ(post_json("/api/v1/qa", q)["answer"], testing::kRefusalText);

  const auto first = post_json("/api/v1/feedback",
                               feedback(view, "e1", "p1", "propose", "villaman", "violated", "mann-act"));
  EXPECT_EQ(first["status"], "filtered");
  expect_no_secrets(first.dump(), service->graph_snapshot());
  const auto second = post_json("/api/v1/feedback",
                                feedback(view, "e2", "p2", "confirm", "villaman", "violated", "mann-act"));
  EXPECT_EQ(second["status"], "active");
  EXPECT_EQ(second["edge_weight"], 2.0);

  const json answer = post_json("/api/v1/qa", q);
  EXPECT_EQ(answer, json(qa::to_json(qa::answer(testing::kVillamanQuestion,
                                                service->graph_snapshot()))));
  EXPECT_EQ(answer["answer"], "Mann Act");
}

TEST_F(HttpTest, ErrorsMapToStatusesWithGenericBodies) {
  const json view = get_json("/api/v1/case/next");
  auto b = feedback(view, "e1", "p1", "propose", "villaman", "violated", "mann-act");

  auto res = client->Post("/api/v1/feedback", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);

  auto bad = b;
  bad.erase("player_id");
  EXPECT_EQ(post_json("/api/v1/feedback", bad, 400)["error"], "validation");
  bad = b;
  bad["case_id"] = "case-nope";
  EXPECT_EQ(post_json("/api/v1/feedback", bad, 404)["error"], "not_found");
  bad = b;
  bad["action"] = "confirm";
  const auto missing = post_json("/api/v1/feedback", bad, 404);
  EXPECT_EQ(missing["message"], "no such resource");
  expect_no_secrets(missing.dump(), service->graph_snapshot());
  bad = b;
  bad["predicate"] = "Kizer";
  const auto unknown_predicate = post_json("/api/v1/feedback", bad, 400);
  EXPECT_EQ(unknown_predicate.dump().find("kizer"), std::string::npos);
  EXPECT_EQ(service->ledger_snapshot().size(), 0u);

  EXPECT_EQ(http_status(ErrorCode::integrity), 409);
  EXPECT_EQ(http_status(ErrorCode::pool_exhausted), 503);
  EXPECT_EQ(http_status(ErrorCode::expired), 404);
  EXPECT_EQ(http_status(ErrorCode::io), 500);
  EXPECT_EQ(http_status(ErrorCode::unauthorized), 401);
}

TEST_F(HttpTest, OperatorEndpointsNeedTheToken) {
  EXPECT_EQ(get_json("/api/v1/candidates", 401)["error"], "unauthorized");
  EXPECT_EQ(get_json("/api/v1/kg", 401)["error"], "unauthorized");
  EXPECT_EQ(get_json("/api/v1/kg", 401, {{"Authorization", "Bearer wrong"}})["error"],
            "unauthorized");

  EXPECT_EQ(get_json("/api/v1/candidates", 200, operator_headers()), json(service->candidates()));

  auto full = client->Get("/api/v1/kg?view=full", operator_headers());
  ASSERT_TRUE(full);
  EXPECT_EQ(full->status, 200);
  EXPECT_EQ(full->get_header_value("Content-Type"), "application/x-ndjson");
  EXPECT_EQ(kg::from_jsonl(full->body), service->graph_snapshot());

  auto filtered = client->Get("/api/v1/kg", operator_headers());
  ASSERT_TRUE(filtered);
  EXPECT_EQ(filtered->body, service->export_kg(true));
  EXPECT_EQ(get_json("/api/v1/kg?view=everything", 400, operator_headers())["error"],
            "validation");
}

TEST_F(HttpTest, FilteredViewHidesUnconfirmedProposals) {
  const json view = get_json("/api/v1/case/next");
  post_json("/api/v1/feedback",
            feedback(view, "e1", "p1", "propose", "villaman", "violated", "mann-act"));
  const auto edge = kg::make_edge_id("villaman", "violated", "mann-act");
  auto filtered = client->Get("/api/v1/kg?view=filtered", operator_headers());
  auto full = client->Get("/api/v1/kg?view=full", operator_headers());
  ASSERT_TRUE(filtered && full);
  EXPECT_EQ(kg::from_jsonl(filtered->body).find_edge(edge), nullptr);
  EXPECT_NE(kg::from_jsonl(full->body).find_edge(edge), nullptr);
}

TEST_F(HttpTest, QaCanBeOperatorGated) {
  TearDown();
  start(http_config(true));
  const json q = {{"question", "What act did Kizer break?"}};
  EXPECT_EQ(post_json("/api/v1/qa", q, 401)["error"], "unauthorized");
  EXPECT_EQ(post_json("/api/v1/qa", q, 200, operator_headers())["answer"], "Mann Act");
  EXPECT_EQ(post_json("/api/v1/qa", json::object(), 400, operator_headers())["error"],
            "validation");
}

TEST_F(HttpTest, NoCaseIs404) {
  TearDown();
  kg::KnowledgeGraph lonely;
  lonely.upsert_entity("Kizer", kg::EntityType::person);
  start(http_config(), lonely);
  EXPECT_EQ(get_json("/api/v1/case/next", 404)["error"], "no_case");
}

TEST_F(HttpTest, PrivacySweepOverManyCases) {
  const auto g = service->graph_snapshot();
  for (int i = 0; i < 25; ++i) {
    auto res = client->Get("/api/v1/case/next");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
    expect_no_secrets(res->body, g);
  }
}

}  // namespace
}  // namespace gamekg::app
