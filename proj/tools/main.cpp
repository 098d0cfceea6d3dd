#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ranknexus/core/corpus_io.hpp"
#include "ranknexus/core/io.hpp"
#include "ranknexus/core/parallel.hpp"
#include "ranknexus/distill/config.hpp"
#include "ranknexus/distill/label.hpp"
#include "ranknexus/distill/pipeline.hpp"
#include "ranknexus/embed/embedding.hpp"
#include "ranknexus/embed/filter.hpp"
#include "ranknexus/embed/retrieval.hpp"
#include "ranknexus/embed/selection.hpp"
#include "ranknexus/error.hpp"
#include "ranknexus/eval/metrics.hpp"
#include "ranknexus/eval/trec.hpp"
#include "ranknexus/rerank/engine.hpp"
#include "ranknexus/rerank/http_backend.hpp"
#include "ranknexus/rerank/mock_backend.hpp"

namespace rn = ranknexus;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallelism;
  std::string log_level = "info";
};

rn::distill::PipelineConfig ResolveConfig(const GlobalOptions& g) {
  rn::distill::PipelineConfig cfg;
  if (!g.config_path.empty()) cfg = rn::distill::LoadConfig(g.config_path);
  if (g.seed) cfg.seed = *g.seed;
  if (g.parallelism) cfg.parallelism = *g.parallelism;
  return cfg;
}

// Writes to `path`, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = rn::OpenForWrite(path);
      path_ = path;
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Close() {
    stream().flush();
    if (!stream()) throw rn::Error(rn::ErrorCode::kIo, "failed writing '" + path_ + "'");
  }

 private:
  std::optional<std::ofstream> file_;
  std::string path_ = "<stdout>";
};

struct BackendOptions {
  std::string spec = "mock:identity";
  std::string qrels;
  std::string endpoint;
  std::string model;
  int timeout_s = 120;
  bool no_images = false;
};

void AddBackendOptions(CLI::App* cmd, BackendOptions& b) {
  cmd->add_option("--backend", b.spec,
                  "mock:identity | mock:reverse | mock:oracle | "
                  "mock:scripted:<file> | http")
      ->capture_default_str();
  cmd->add_option("--oracle-qrels", b.qrels, "Grades for mock:oracle");
  cmd->add_option("--endpoint", b.endpoint, "Chat-completions URL (http backend)");
  cmd->add_option("--model", b.model, "Model name (http backend)");
  cmd->add_option("--timeout", b.timeout_s, "Per-request timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-images", b.no_images, "Backend cannot take image inputs");
}

// One response per line; "\n" inside a response is written as the two
// characters backslash-n.
std::vector<std::string> ReadScript(const std::string& path) {
  auto in = rn::OpenForRead(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string unescaped;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == 'n') {
        unescaped += '\n';
        ++i;
      } else {
        unescaped += line[i];
      }
    }
    lines.push_back(std::move(unescaped));
  }
  return lines;
}

std::unique_ptr<rn::rerank::Backend> MakeBackend(const BackendOptions& b) {
  using rn::rerank::MockBackend;
  if (b.spec == "mock:identity") return std::make_unique<MockBackend>(MockBackend::Identity());
  if (b.spec == "mock:reverse") return std::make_unique<MockBackend>(MockBackend::Reverse());
  if (b.spec == "mock:oracle") {
    if (b.qrels.empty()) {
      throw rn::Error(rn::ErrorCode::kInvalidArgument, "mock:oracle needs --oracle-qrels");
    }
    auto qrels = std::make_shared<rn::eval::Qrels>(rn::eval::ReadQrels(b.qrels, false));
    return std::make_unique<MockBackend>(MockBackend::Oracle(
        [qrels](const std::string& q, const std::string& d) { return qrels->Grade(q, d); }));
  }
  const std::string scripted = "mock:scripted:";
  if (b.spec.rfind(scripted, 0) == 0) {
    return std::make_unique<MockBackend>(
        MockBackend::Scripted(ReadScript(b.spec.substr(scripted.size()))));
  }
  if (b.spec == "http") {
    if (b.endpoint.empty() || b.model.empty()) {
      throw rn::Error(rn::ErrorCode::kInvalidArgument, "http backend needs --endpoint and --model");
    }
    rn::rerank::HttpBackendConfig cfg;
    cfg.endpoint = b.endpoint;
    cfg.model = b.model;
    cfg.timeout = std::chrono::seconds(b.timeout_s);
    cfg.supports_images = !b.no_images;
    return std::make_unique<rn::rerank::HttpBackend>(cfg);
  }
  throw rn::Error(rn::ErrorCode::kInvalidArgument, "unknown backend '" + b.spec + "'");
}

// ---------------------------------------------------------------- filter

struct FilterArgs {
  std::string query_emb;
  std::string corpus_emb;
  std::string pairs;
  std::optional<double> threshold;
  std::string out;
};

int RunFilter(const GlobalOptions& g, const FilterArgs& a) {
  auto cfg = ResolveConfig(g);
  if (a.threshold) cfg.quality_threshold = *a.threshold;
  cfg.Validate();
  const auto queries = rn::embed::ReadEmbeddings(a.query_emb);
  const auto corpus = rn::embed::ReadEmbeddings(a.corpus_emb);

  struct Ids {
    std::string query_id;
    std::string doc_id;
  };
  std::vector<rn::embed::QualityPair<Ids>> pairs;
  if (a.pairs.empty()) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto top = rn::embed::TopKByDistance(queries[q].vector, corpus, 1);
      pairs.push_back({queries[q].vector, corpus[top[0].index].vector,
                       Ids{queries[q].id, top[0].id}});
    }
  } else {
    auto in = rn::OpenForRead(a.pairs);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream fields(line);
      std::string qid, did, extra;
      if (!(fields >> qid)) continue;
      if (!(fields >> did) || (fields >> extra)) {
        throw rn::Error(rn::ErrorCode::kMalformedLine, "expected 'qid docid': " + line, line_no);
      }
      const auto qi = queries.IndexOf(qid);
      const auto di = corpus.IndexOf(did);
      if (qi == rn::embed::EmbeddingSet::npos || di == rn::embed::EmbeddingSet::npos) {
        throw rn::Error(rn::ErrorCode::kMalformedLine, "unknown id in pair: " + line, line_no);
      }
      pairs.push_back({queries[qi].vector, corpus[di].vector, Ids{qid, did}});
    }
  }

  const auto result = rn::embed::QualityFilter(pairs, cfg.quality_threshold);
  Output out(a.out);
  out.stream() << json{{"metadata",
                        {{"stage", "quality_filter"},
                         {"threshold", cfg.quality_threshold},
                         {"pairing", a.pairs.empty() ? "euclidean_top1" : "file"},
                         {"input", pairs.size()},
                         {"kept", result.counts.kept},
                         {"dropped", result.counts.dropped},
                         {"zero_vector", result.counts.zero_vector}}}}
                      .dump()
               << '\n';
  for (std::size_t i = 0; i < result.kept.size(); ++i) {
    out.stream() << json{{"query_id", result.kept[i].payload.query_id},
                         {"doc_id", result.kept[i].payload.doc_id},
                         {"similarity", result.kept_sims[i]}}
                        .dump()
                 << '\n';
  }
  out.Close();
  spdlog::info("filter: kept {} of {} pairs (threshold {})", result.counts.kept,
               pairs.size(), cfg.quality_threshold);
  return kExitOk;
}

// ---------------------------------------------------------------- select

struct SelectArgs {
  std::string embeddings;
  std::string query_emb;
  std::string corpus_emb;
  std::string algorithm = "greedy";
  std::optional<std::size_t> k;
  std::string metric;
  std::size_t seed_index = 0;
  std::size_t iters = 50;
  bool trace = false;
  std::string out;
};

void WriteSelection(std::ostream& out, const rn::embed::SelectionResult& sel,
                    bool trace, const std::vector<std::string>* doc_ids) {
  for (std::size_t i = 0; i < sel.selected_ids.size(); ++i) {
    json line{{"id", sel.selected_ids[i]}};
    if (doc_ids) line["doc_id"] = (*doc_ids)[i];
    if (trace) {
      line["step"] = i;
      line["index"] = sel.trace[i].index;
      line["avg_sim"] = sel.trace[i].avg_sim ? json(*sel.trace[i].avg_sim) : json(nullptr);
    }
    out << line.dump() << '\n';
  }
}

int RunSelect(const GlobalOptions& g, const SelectArgs& a) {
  auto cfg = ResolveConfig(g);
  if (a.k) cfg.selection_k = *a.k;
  if (!a.metric.empty()) cfg.selection_metric = rn::embed::ParseSimilarityMetric(a.metric);
  cfg.Validate();

  const bool curate = !a.query_emb.empty() || !a.corpus_emb.empty();
  if (curate == !a.embeddings.empty()) {
    throw rn::Error(rn::ErrorCode::kInvalidArgument,
                    "give either --embeddings or both --query-emb and --corpus-emb");
  }
  Output out(a.out);
  if (curate) {
    if (a.query_emb.empty() || a.corpus_emb.empty() || a.algorithm != "greedy") {
      throw rn::Error(rn::ErrorCode::kInvalidArgument,
                      "curation needs --query-emb, --corpus-emb and the greedy algorithm");
    }
    const auto result = rn::distill::Curate(rn::embed::ReadEmbeddings(a.query_emb),
                                            rn::embed::ReadEmbeddings(a.corpus_emb), cfg);
    auto meta = result.manifest;
    meta["k"] = cfg.selection_k;
    meta["threshold"] = cfg.quality_threshold;
    meta["passes"] = result.selection.passes;
    meta["trace"] = a.trace;
    out.stream() << json{{"metadata", meta}}.dump() << '\n';
    WriteSelection(out.stream(), result.selection, a.trace, &result.selected_doc_ids);
    out.Close();
    spdlog::info("select: curated {} records", result.selection.selected_ids.size());
    return kExitOk;
  }

  const auto records = rn::embed::ReadEmbeddings(a.embeddings);
  rn::embed::SelectionResult sel;
  if (a.algorithm == "greedy") {
    rn::embed::GreedyOptions opts;
    opts.metric = cfg.selection_metric;
    opts.seed_index = a.seed_index;
    opts.threads = cfg.parallelism;
    sel = rn::embed::GreedyDiversitySelect(records, cfg.selection_k, opts);
  } else if (a.algorithm == "random") {
    sel = rn::embed::RandomSelect(records, cfg.selection_k, cfg.seed);
  } else if (a.algorithm == "kmeans") {
    sel = rn::embed::KMeansCentroidSelect(records, cfg.selection_k, cfg.seed, a.iters);
  } else {
    throw rn::Error(rn::ErrorCode::kInvalidArgument, "unknown algorithm '" + a.algorithm + "'");
  }
  json meta{{"kind", "selection"},
            {"algorithm", a.algorithm},
            {"k", cfg.selection_k},
            {"seed", cfg.seed},
            {"threshold", nullptr},
            {"records", records.size()},
            {"selected", sel.selected_ids.size()},
            {"passes", sel.passes},
            {"trace", a.trace}};
  if (a.algorithm == "greedy") {
    meta["metric"] = std::string(rn::embed::ToString(cfg.selection_metric));
    meta["seed_index"] = a.seed_index;
  }
  out.stream() << json{{"metadata", meta}}.dump() << '\n';
  WriteSelection(out.stream(), sel, a.trace, nullptr);
  out.Close();
  spdlog::info("select: {} of {} records ({})", sel.selected_ids.size(), records.size(),
               a.algorithm);
  return kExitOk;
}

// ---------------------------------------------------------------- retrieve

struct RetrieveArgs {
  std::string query_emb;
  std::string corpus_emb;
  std::optional<std::size_t> k;
  std::string tag = "euclidean";
  std::string out;
};

int RunRetrieve(const GlobalOptions& g, const RetrieveArgs& a) {
  auto cfg = ResolveConfig(g);
  if (a.k) cfg.top_k = *a.k;
  cfg.Validate();
  const auto queries = rn::embed::ReadEmbeddings(a.query_emb);
  const auto corpus = rn::embed::ReadEmbeddings(a.corpus_emb);

  std::vector<std::vector<rn::embed::Neighbor>> hits(queries.size());
  rn::ParallelFor(queries.size(), cfg.parallelism, [&](std::size_t q) {
    hits[q] = rn::embed::TopKByDistance(queries[q].vector, corpus, cfg.top_k);
  });
  std::vector<rn::eval::RunEntry> run;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (std::size_t r = 0; r < hits[q].size(); ++r) {
      run.push_back({queries[q].id, hits[q][r].id, r + 1, -hits[q][r].distance, a.tag});
    }
  }
  Output out(a.out);
  rn::eval::WriteRun(run, out.stream());
  out.Close();
  spdlog::info("retrieve: {} queries, top {}", queries.size(), cfg.top_k);
  return kExitOk;
}

// ---------------------------------------------------------------- distill

struct DistillArgs {
  std::string queries;
  std::string query_emb;
  std::string corpus_emb;
  std::string corpus;
  std::string out;
  std::string selected_out;
  std::optional<std::size_t> top_k;
  std::optional<std::size_t> budget;
  std::string mode;
  bool resume = false;
  bool strict = false;
  BackendOptions backend;
};

int RunDistill(const GlobalOptions& g, const DistillArgs& a) {
  auto cfg = ResolveConfig(g);
  if (a.top_k) cfg.top_k = *a.top_k;
  if (a.budget) cfg.budget = *a.budget;
  if (!a.mode.empty()) cfg.mode = rn::rerank::ParseRerankMode(a.mode);
  if (a.strict) cfg.strict = true;
  cfg.Validate();

  const auto queries = rn::ReadQueries(a.queries);
  const auto query_embs = rn::embed::ReadEmbeddings(a.query_emb);
  const auto corpus_embs = rn::embed::ReadEmbeddings(a.corpus_emb);
  const auto corpus = rn::ReadCorpus(a.corpus);
  auto backend = MakeBackend(a.backend);

  rn::distill::DistillInputs inputs{&queries, &query_embs, &corpus_embs, &corpus,
                                    backend.get()};
  const auto summary = rn::distill::DistillToFile(inputs, cfg, {a.out, a.resume});
  for (const auto& f : summary.failures) {
    spdlog::warn("query {} skipped: {}", f.query_id, f.reason);
  }
  spdlog::info("distill: {} labels, {} failures, {} resumed of {} queries", summary.emitted,
               summary.failures.size(), summary.resumed, summary.queries);

  if (!a.selected_out.empty()) {
    auto labels = rn::distill::ReadLabels(a.out);
    const auto budget = cfg.EffectiveBudget();
    const auto filtered = rn::distill::ConfidenceFilter(std::move(labels), budget);
    if (filtered.under_budget) {
      spdlog::warn("only {} labels available for a budget of {}", filtered.labels.size(), budget);
    }
    auto manifest = rn::distill::LabelManifest(cfg, backend->tag());
    manifest["manifest"]["confidence_filter"] = {{"budget", budget},
                                                 {"selected", filtered.labels.size()}};
    rn::distill::WriteLabelFile(a.selected_out, manifest, filtered.labels);
  }
  return summary.failures.empty() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------- rerank

struct RerankArgs {
  std::string run;
  std::string queries;
  std::string corpus;
  std::string out;
  bool listwise = false;
  bool pairwise = false;
  bool tournament = false;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> window_size;
  std::optional<std::size_t> stride;
  std::string mode;
  std::string tag = "rerank";
  bool strict = false;
  BackendOptions backend;
};

int RunRerank(const GlobalOptions& g, const RerankArgs& a) {
  auto cfg = ResolveConfig(g);
  if (a.window_size) cfg.window.window_size = *a.window_size;
  if (a.stride) cfg.window.stride = *a.stride;
  if (!a.mode.empty()) cfg.mode = rn::rerank::ParseRerankMode(a.mode);
  if (a.strict) cfg.strict = true;
  cfg.Validate();
  if (a.tournament && !a.pairwise) {
    throw rn::Error(rn::ErrorCode::kInvalidArgument, "--tournament requires --pairwise");
  }
  if (a.depth && *a.depth == 0) {
    throw rn::Error(rn::ErrorCode::kInvalidArgument, "--depth must be >= 1");
  }

  const auto entries = rn::eval::ReadRun(a.run);
  const auto by_query = rn::eval::GroupRun(entries);
  // Output keeps the input's query order.
  std::vector<std::string> query_order;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (seen.insert(e.query_id).second) query_order.push_back(e.query_id);
  }
  const auto query_list = rn::ReadQueries(a.queries);
  const auto corpus = rn::ReadCorpus(a.corpus);
  auto backend = MakeBackend(a.backend);

  std::map<std::string, const rn::Query*> query_of;
  for (const auto& q : query_list) query_of[q.id()] = &q;

  struct Work {
    const std::string* qid;
    const std::vector<rn::eval::RunEntry>* entries;
    std::vector<std::string> order;
    std::optional<std::string> problem;
  };
  std::vector<Work> work;
  for (const auto& qid : query_order) work.push_back({&qid, &by_query.at(qid), {}, {}});

  rn::ParallelFor(work.size(), cfg.parallelism, [&](std::size_t i) {
    auto& w = work[i];
    for (const auto& e : *w.entries) w.order.push_back(e.doc_id);
    const std::size_t head = std::min(w.order.size(), a.depth.value_or(w.order.size()));
    auto q = query_of.find(*w.qid);
    if (q == query_of.end()) {
      w.problem = "no query text";
      return;
    }
    if (head < 2) return;
    rn::CandidateList candidates;
    candidates.query_id = *w.qid;
    candidates.doc_ids.assign(w.order.begin(), w.order.begin() + head);
    try {
      rn::rerank::RerankOutcome outcome;
      if (a.pairwise) {
        rn::rerank::PairwiseOptions opts;
        opts.tournament = a.tournament;
        opts.strict = cfg.strict;
        outcome = rn::rerank::RerankPairwise(*q->second, candidates, corpus, *backend, opts);
      } else {
        rn::rerank::ListwiseOptions opts;
        opts.window = cfg.window;
        opts.mode = cfg.mode;
        opts.strict = cfg.strict;
        outcome = rn::rerank::RerankListwise(*q->second, candidates, corpus, *backend, opts);
      }
      std::copy(outcome.list.doc_ids.begin(), outcome.list.doc_ids.end(), w.order.begin());
      if (!outcome.incidents.empty()) {
        w.problem = std::to_string(outcome.incidents.size()) +
                    " unusable answer(s), first: " + outcome.incidents.front().detail;
      }
    } catch (const rn::Error& e) {
      w.problem = e.what();
    }
  });

  std::vector<rn::eval::RunEntry> out_run;
  std::size_t failures = 0;
  for (const auto& w : work) {
    if (w.problem) {
      ++failures;
      spdlog::warn("query {}: {}", *w.qid, *w.problem);
    }
    const std::size_t m = w.order.size();
    for (std::size_t r = 1; r <= m; ++r) {
      out_run.push_back({*w.qid, w.order[r - 1], r, static_cast<double>(m - r + 1), a.tag});
    }
  }
  Output out(a.out);
  rn::eval::WriteRun(out_run, out.stream());
  out.Close();
  spdlog::info("rerank: {} queries, {} with problems", work.size(), failures);
  return failures == 0 ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string qrels;
  std::string run;
  std::string groups;
  std::string gain = "linear";
  std::vector<std::size_t> ndcg_cutoffs{10, 50};
  std::vector<std::size_t> recall_cutoffs{1, 3, 5};
  int rel_threshold = 1;
  std::string out;
};

int RunEval(const GlobalOptions&, const EvalArgs& a) {
  auto qrels = rn::eval::ReadQrels(a.qrels);
  rn::eval::EvalConfig cfg;
  if (!a.groups.empty()) {
    rn::eval::ReadGroups(a.groups, qrels);
    cfg.grouping_source = a.groups;
  }
  cfg.gain = rn::eval::ParseGain(a.gain);
  cfg.ndcg_cutoffs = a.ndcg_cutoffs;
  cfg.recall_cutoffs = a.recall_cutoffs;
  cfg.rel_threshold = a.rel_threshold;
  const auto report =
      rn::eval::Evaluate(qrels, rn::eval::GroupRun(rn::eval::ReadRun(a.run)), cfg);
  Output out(a.out);
  out.stream() << report.dump(2) << '\n';
  out.Close();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("ranknexus");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Listwise and pairwise reranking, data curation and evaluation"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Pipeline configuration (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for randomized selectors");
  app.add_option("--parallelism", g.parallelism, "Concurrent queries / scan threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off")
      ->capture_default_str();

  int code = kExitOk;

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Quality filtering of query/document pairs");
  filter->add_option("--query-emb", fa.query_emb)->required()->check(CLI::ExistingFile);
  filter->add_option("--corpus-emb", fa.corpus_emb)->required()->check(CLI::ExistingFile);
  filter->add_option("--pairs", fa.pairs, "'qid docid' lines; default pairs each query "
                                          "with its nearest document")
      ->check(CLI::ExistingFile);
  filter->add_option("--threshold", fa.threshold, "Minimum cosine similarity");
  filter->add_option("-o,--out", fa.out);
  filter->callback([&] { code = RunFilter(g, fa); });

  SelectArgs sa;
  auto* select = app.add_subcommand("select", "Coreset selection");
  select->add_option("--embeddings", sa.embeddings)->check(CLI::ExistingFile);
  select->add_option("--query-emb", sa.query_emb, "With --corpus-emb: filter then select")
      ->check(CLI::ExistingFile);
  select->add_option("--corpus-emb", sa.corpus_emb)->check(CLI::ExistingFile);
  select->add_option("--algorithm", sa.algorithm)
      ->check(CLI::IsMember({"greedy", "random", "kmeans"}))
      ->capture_default_str();
  select->add_option("-k,--k", sa.k, "Number of records to select");
  select->add_option("--metric", sa.metric, "cosine|euclidean (greedy)");
  select->add_option("--seed-index", sa.seed_index, "First record (greedy)")
      ->capture_default_str();
  select->add_option("--iters", sa.iters, "Lloyd iterations (kmeans)")->capture_default_str();
  select->add_flag("--trace", sa.trace, "Emit per-step details");
  select->add_option("-o,--out", sa.out);
  select->callback([&] { code = RunSelect(g, sa); });

  RetrieveArgs ra;
  auto* retrieve = app.add_subcommand("retrieve", "Exact Euclidean top-k retrieval");
  retrieve->add_option("--query-emb", ra.query_emb)->required()->check(CLI::ExistingFile);
  retrieve->add_option("--corpus-emb", ra.corpus_emb)->required()->check(CLI::ExistingFile);
  retrieve->add_option("-k,--k", ra.k);
  retrieve->add_option("--tag", ra.tag)->capture_default_str();
  retrieve->add_option("-o,--out", ra.out);
  retrieve->callback([&] { code = RunRetrieve(g, ra); });

  DistillArgs da;
  auto* distill = app.add_subcommand("distill", "Teacher labeling");
  distill->add_option("--queries", da.queries)->required()->check(CLI::ExistingFile);
  distill->add_option("--query-emb", da.query_emb)->required()->check(CLI::ExistingFile);
  distill->add_option("--corpus-emb", da.corpus_emb)->required()->check(CLI::ExistingFile);
  distill->add_option("--corpus", da.corpus)->required()->check(CLI::ExistingFile);
  distill->add_option("-o,--out", da.out)->required();
  distill->add_option("--selected-out", da.selected_out,
                      "Also write the budget most confident labels here");
  distill->add_option("--top-k", da.top_k);
  distill->add_option("--budget", da.budget);
  distill->add_option("--mode", da.mode, "text|multimodal");
  distill->add_flag("--resume", da.resume, "Continue from the checkpoint");
  distill->add_flag("--strict", da.strict, "Fail a query on any repair");
  AddBackendOptions(distill, da.backend);
  distill->callback([&] { code = RunDistill(g, da); });

  RerankArgs rka;
  auto* rerank = app.add_subcommand("rerank", "Rerank a TREC run");
  rerank->add_option("--run", rka.run)->required()->check(CLI::ExistingFile);
  rerank->add_option("--queries", rka.queries)->required()->check(CLI::ExistingFile);
  rerank->add_option("--corpus", rka.corpus)->required()->check(CLI::ExistingFile);
  rerank->add_option("-o,--out", rka.out);
  auto* lw = rerank->add_flag("--listwise", rka.listwise, "Sliding-window listwise (default)");
  auto* pw = rerank->add_flag("--pairwise", rka.pairwise, "Per-document relevance");
  lw->excludes(pw);
  rerank->add_flag("--tournament", rka.tournament, "Pairwise: all ordered comparisons");
  rerank->add_option("--depth", rka.depth, "Rerank only the first N of each query");
  rerank->add_option("--window", rka.window_size);
  rerank->add_option("--stride", rka.stride);
  rerank->add_option("--mode", rka.mode, "text|multimodal");
  rerank->add_option("--tag", rka.tag)->capture_default_str();
  rerank->add_flag("--strict", rka.strict);
  AddBackendOptions(rerank, rka.backend);
  rerank->callback([&] { code = RunRerank(g, rka); });

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "nDCG, MRR and recall against qrels");
  eval->add_option("--qrels", ea.qrels)->required()->check(CLI::ExistingFile);
  eval->add_option("--run", ea.run)->required()->check(CLI::ExistingFile);
  eval->add_option("--groups", ea.groups, "'qid group' lines for macro recall")
      ->check(CLI::ExistingFile);
  eval->add_option("--gain", ea.gain)
      ->check(CLI::IsMember({"linear", "exponential"}))
      ->capture_default_str();
  eval->add_option("--ndcg-cutoffs", ea.ndcg_cutoffs)->delimiter(',')->capture_default_str();
  eval->add_option("--recall-cutoffs", ea.recall_cutoffs)->delimiter(',')->capture_default_str();
  eval->add_option("--rel-threshold", ea.rel_threshold)->capture_default_str();
  eval->add_option("-o,--out", ea.out);
  eval->callback([&] { code = RunEval(g, ea); });

  app.parse_complete_callback([&] {
    const auto level = spdlog::level::from_str(g.log_level);
    spdlog::set_level(level);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitFatal;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFatal;
  }
  return code;
}
