// gamekg: command-line driver for ingestion, scoring, consensus, QA and the
// curation server.
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gamekg/app/config.hpp"
#include "gamekg/app/server.hpp"
#include "gamekg/app/service.hpp"
#include "gamekg/error.hpp"
#include "gamekg/feedback/consensus.hpp"
#include "gamekg/feedback/ledger.hpp"
#include "gamekg/ingest/builder.hpp"
#include "gamekg/ingest/extractor.hpp"
#include "gamekg/ingest/lexicon.hpp"
#include "gamekg/kg/dot.hpp"
#include "gamekg/kg/jsonl.hpp"
#include "gamekg/qa/qa.hpp"
#include "gamekg/scoring/candidates.hpp"
#include "gamekg/scoring/embedding.hpp"
#include "gamekg/text.hpp"

namespace fs = std::filesystem;
using namespace gamekg;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

int exit_code(ErrorCode code) { return code == ErrorCode::io ? kIoError : kInvalid; }

// Loads the graph and folds the ledger into its weights. Statuses stay as
// stored unless `consensus` is given.
kg::KnowledgeGraph load_with_ledger(const fs::path& kg_path, const std::string& ledger_path) {
  kg::KnowledgeGraph graph = kg::load_graph(kg_path);
  if (!ledger_path.empty()) feedback::replay(graph, feedback::load_ledger(ledger_path));
  return graph;
}

struct IngestArgs {
  std::vector<std::string> files;
  std::string out;
  std::string lexicon;
};

int run_ingest(const IngestArgs& args) {
  if (args.files.empty()) fail(ErrorCode::validation, "ingest needs at least one input file");
  auto lexicon = ingest::PredicateLexicon::seed();
  if (!args.lexicon.empty()) lexicon.merge(ingest::PredicateLexicon::load(args.lexicon));
  std::vector<kg::Document> documents;
  for (const auto& file : args.files) documents.push_back(ingest::load_document(file));
  const auto graph = ingest::ingest_documents(documents, ingest::RuleBasedExtractor(lexicon));
  kg::save_graph(graph, args.out);
  spdlog::info("wrote {} entities and {} edges from {} documents to {}", graph.entities().size(),
               graph.edges().size(), documents.size(), args.out);
  return kOk;
}

struct CandidatesArgs {
  std::string kg;
  std::string ledger;
  double tau_low = 0.2;
  double tau_high = 0.6;
  std::size_t max = 100;
  std::size_t dimension = scoring::HashedBagProvider::kDefaultDimension;
};

int run_candidates(const CandidatesArgs& args) {
  const scoring::CandidateThresholds thresholds{args.tau_low, args.tau_high};
  thresholds.validate();
  const auto graph = load_with_ledger(args.kg, args.ledger);
  const scoring::HashedBagProvider provider(args.dimension);
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& f : scoring::identify_candidates(graph, provider, thresholds, args.max)) {
    out.push_back(scoring::to_json(f));
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

struct ConsensusArgs {
  std::string kg;
  std::string ledger;
  std::string out;
  double accept = 2.0;
  double reject = -2.0;
};

int run_consensus(const ConsensusArgs& args) {
  const feedback::ConsensusThresholds thresholds{args.accept, args.reject};
  thresholds.validate();
  kg::KnowledgeGraph graph = kg::load_graph(args.kg);
  const auto ledger = feedback::replay(graph, feedback::load_ledger(args.ledger));
  const std::size_t changed = feedback::apply_consensus(graph, ledger, thresholds);
  kg::save_graph(graph, args.out.empty() ? args.kg : args.out);
  std::size_t active = 0;
  for (const auto& [id, edge] : graph.edges()) active += edge.is_active() ? 1 : 0;
  spdlog::info("{} events, {} of {} edges active, {} statuses changed", ledger.size(), active,
               graph.edges().size(), changed);
  return kOk;
}

struct QaArgs {
  std::string kg;
  std::string ledger;
  std::string question;
  std::string synonyms;
  std::size_t max_hops = 2;
};

int run_qa(const QaArgs& args) {
  const auto graph = load_with_ledger(args.kg, args.ledger);
  auto synonyms = qa::SynonymTable::defaults();
  if (!args.synonyms.empty()) synonyms.merge(qa::SynonymTable::load(args.synonyms));
  qa::QaOptions options;
  options.max_hops = args.max_hops;
  std::cout << qa::to_json(qa::answer(args.question, graph, synonyms, options)).dump(2) << '\n';
  return kOk;
}

struct DotArgs {
  std::string kg;
  std::string ledger;
};

int run_export_dot(const DotArgs& args) {
  std::cout << kg::export_dot(load_with_ledger(args.kg, args.ledger));
  return kOk;
}

struct VoteArgs {
  std::string kg;
  std::string ledger;
  std::string player;
  std::string action;
  std::string edge;
  std::string subject;
  std::string predicate;
  std::string object;
  std::string event_id;
  double weight = 1.0;
};

int run_vote(const VoteArgs& args) {
  feedback::FeedbackEvent event;
  event.player_id = args.player;
  event.action = feedback::action_from_string(args.action);
  event.vote_weight = args.weight;
  event.case_id = "cli";
  if (args.event_id.empty()) {
    std::random_device rd;
    event.event_id = "cli-" + text::hex64((std::uint64_t{rd()} << 32) ^ rd());
  } else {
    event.event_id = args.event_id;
  }

  kg::KnowledgeGraph graph = kg::load_graph(args.kg);
  auto ledger = feedback::replay(graph, feedback::load_ledger(args.ledger));
  auto entity_id = [&](const std::string& surface) {
    auto id = graph.resolve(surface);
    if (!id) fail(ErrorCode::not_found, "unknown entity '" + surface + "'");
    return *id;
  };
  if (event.action == feedback::Action::propose) {
    event.target = feedback::TripleTarget{entity_id(args.subject), args.predicate,
                                          entity_id(args.object)};
  } else if (!args.edge.empty()) {
    event.target = feedback::EdgeTarget{args.edge};
  } else {
    event.target = feedback::EdgeTarget{kg::make_edge_id(
        entity_id(args.subject), kg::normalize_predicate(args.predicate), entity_id(args.object))};
  }

  // Record in memory first so nothing invalid reaches the file.
  const auto outcome = feedback::record_feedback(ledger, graph, event);
  if (!outcome.duplicate) {
    feedback::LedgerWriter writer(args.ledger, true);
    writer.append(ledger.events().back());
  }
  nlohmann::ordered_json j;
  j["event_id"] = event.event_id;
  j["edge_id"] = outcome.edge_id;
  j["edge_weight"] = outcome.weight;
  j["duplicate"] = outcome.duplicate;
  std::cout << j.dump() << '\n';
  return kOk;
}

struct ServeArgs {
  std::string config;
};

int run_serve(const ServeArgs& args) {
  auto config = args.config.empty() ? app::ServerConfig{} : app::ServerConfig::load(args.config);
  config.apply_environment();
  config.validate();
  if (config.operator_token.empty()) {
    spdlog::warn("no operator token set; operator endpoints will refuse every request");
  }

  // Block the signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto service = app::CurationService::open(config);
  app::ApiServer server(*service);
  const int port = server.bind(config.listen_host, config.listen_port);
  std::thread http([&] { server.serve(); });
  server.wait_until_ready();
  spdlog::info("listening on {}:{}", config.listen_host, port);

  int received = 0;
  sigwait(&signals, &received);
  spdlog::info("signal {} received, shutting down", received);
  server.stop();
  http.join();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("gamekg");
  spdlog::set_default_logger(logger);

  CLI::App cli{"gamekg: knowledge-graph curation through play"};
  cli.require_subcommand(1);
  bool verbose = false;
  cli.add_flag("-v,--verbose", verbose, "Debug logging");

  IngestArgs ingest_args;
  auto* ingest_cmd = cli.add_subcommand("ingest", "Extract triples from documents into a graph");
  ingest_cmd->add_option("files", ingest_args.files, "Documents (.json or plain text)");
  ingest_cmd->add_option("--out", ingest_args.out, "Output JSONL graph")->required();
  ingest_cmd->add_option("--lexicon", ingest_args.lexicon, "Extra predicate lexicon (JSON)");

  CandidatesArgs cand_args;
  auto* cand_cmd = cli.add_subcommand("candidates", "Score entity pairs for review");
  cand_cmd->add_option("--kg", cand_args.kg, "Graph JSONL")->required();
  cand_cmd->add_option("--ledger", cand_args.ledger, "Vote ledger JSONL");
  cand_cmd->add_option("--tau-low", cand_args.tau_low, "Suspect-edge threshold");
  cand_cmd->add_option("--tau-high", cand_args.tau_high, "Missing-edge threshold");
  cand_cmd->add_option("--max", cand_args.max, "Maximum findings");
  cand_cmd->add_option("--dim", cand_args.dimension, "Embedding dimension");

  ServeArgs serve_args;
  auto* serve_cmd = cli.add_subcommand("serve", "Run the HTTP API until SIGINT/SIGTERM");
  serve_cmd->add_option("--config", serve_args.config, "Server config JSON");

  ConsensusArgs cons_args;
  auto* cons_cmd = cli.add_subcommand("consensus", "Recompute statuses from the ledger");
  cons_cmd->add_option("--kg", cons_args.kg, "Graph JSONL (rewritten)")->required();
  cons_cmd->add_option("--ledger", cons_args.ledger, "Vote ledger JSONL")->required();
  cons_cmd->add_option("--accept", cons_args.accept, "Accept threshold (>= 0)");
  cons_cmd->add_option("--reject", cons_args.reject, "Reject threshold (<= 0)");
  cons_cmd->add_option("--out", cons_args.out, "Write here instead of rewriting --kg");

  QaArgs qa_args;
  auto* qa_cmd = cli.add_subcommand("qa", "Answer a question from the graph");
  qa_cmd->add_option("--kg", qa_args.kg, "Graph JSONL")->required();
  qa_cmd->add_option("--ledger", qa_args.ledger, "Vote ledger JSONL");
  qa_cmd->add_option("--synonyms", qa_args.synonyms, "Extra synonym table (JSON)");
  qa_cmd->add_option("--max-hops", qa_args.max_hops, "Path length limit");
  qa_cmd->add_option("question", qa_args.question, "Question text")->required();

  DotArgs dot_args;
  auto* dot_cmd = cli.add_subcommand("export-dot", "Print the active graph as Graphviz DOT");
  dot_cmd->add_option("--kg", dot_args.kg, "Graph JSONL")->required();
  dot_cmd->add_option("--ledger", dot_args.ledger, "Vote ledger JSONL");

  VoteArgs vote_args;
  auto* vote_cmd = cli.add_subcommand("vote", "Append one feedback event to a ledger");
  vote_cmd->add_option("--kg", vote_args.kg, "Graph JSONL")->required();
  vote_cmd->add_option("--ledger", vote_args.ledger, "Vote ledger JSONL")->required();
  vote_cmd->add_option("--player", vote_args.player, "Player id")->required();
  vote_cmd->add_option("--action", vote_args.action, "confirm, reject or propose")->required();
  vote_cmd->add_option("--edge", vote_args.edge, "Edge id (confirm/reject)");
  vote_cmd->add_option("--subject", vote_args.subject, "Subject name or id");
  vote_cmd->add_option("--predicate", vote_args.predicate, "Predicate");
  vote_cmd->add_option("--object", vote_args.object, "Object name or id");
  vote_cmd->add_option("--weight", vote_args.weight, "Vote weight (> 0)");
  vote_cmd->add_option("--event-id", vote_args.event_id, "Idempotency key");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (*ingest_cmd) return run_ingest(ingest_args);
    if (*cand_cmd) return run_candidates(cand_args);
    if (*serve_cmd) return run_serve(serve_args);
    if (*cons_cmd) return run_consensus(cons_args);
    if (*qa_cmd) return run_qa(qa_args);
    if (*dot_cmd) return run_export_dot(dot_args);
    if (*vote_cmd) return run_vote(vote_args);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kInvalid;
  }
  return kInvalid;
}
