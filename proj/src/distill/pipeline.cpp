#include "ranknexus/distill/pipeline.hpp"

#include <unordered_map>

#include "ranknexus/core/io.hpp"
#include "ranknexus/core/parallel.hpp"
#include "ranknexus/embed/filter.hpp"
#include "ranknexus/embed/retrieval.hpp"
#include "ranknexus/error.hpp"
#include "ranknexus/rerank/engine.hpp"

namespace ranknexus::distill {

namespace {

std::unordered_map<std::string, std::size_t> IndexById(
    const embed::EmbeddingSet& set) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < set.size(); ++i) index.emplace(set[i].id, i);
  return index;
}

struct QueryResult {
  std::optional<TeacherLabel> label;
  std::optional<std::string> failure;
};

QueryResult LabelOne(const Query& query, std::span<const float> query_vec,
                     const DistillInputs& in, const PipelineConfig& cfg) {
  QueryResult result;
  try {
    const auto neighbors = embed::TopKByDistance(query_vec, *in.corpus_embs,
                                                 cfg.top_k);
    CandidateList candidates;
    candidates.query_id = query.id();
    std::vector<double> scores;
    for (const auto& nb : neighbors) {
      candidates.doc_ids.push_back(nb.id);
      scores.push_back(-nb.distance);
    }
    candidates.first_stage_scores = std::move(scores);

    rerank::ListwiseOptions options;
    options.window = cfg.window;
    options.mode = cfg.mode;
    options.strict = cfg.strict;
    const auto outcome = rerank::RerankListwise(query, candidates, *in.corpus,
                                                *in.backend, options);
    if (!outcome.incidents.empty()) {
      result.failure = "unusable teacher output: " +
                       outcome.incidents.front().detail;
      return result;
    }
    TeacherLabel label;
    label.query_id = query.id();
    label.candidate_ids = candidates.doc_ids;
    label.teacher_perm = outcome.perm;
    label.repair_count = outcome.repairs.size();
    label.backend_tag = in.backend->tag();
    label.confidence = ConfidenceScore(label);
    result.label = std::move(label);
  } catch (const Error& e) {
    result.failure = e.what();
  }
  return result;
}

}  // namespace

DistillSummary Distill(const DistillInputs& in, const PipelineConfig& cfg,
                       const LabelSink& sink,
                       const std::optional<std::string>& resume_after,
                       const BatchDone& on_batch) {
  cfg.Validate();
  if (!in.queries || !in.query_embs || !in.corpus_embs || !in.corpus ||
      !in.backend) {
    throw Error(ErrorCode::kInvalidArgument, "distill inputs incomplete");
  }
  const auto& queries = *in.queries;
  if (in.corpus_embs->empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no corpus embeddings");
  }
  if (in.query_embs->dimension() != in.corpus_embs->dimension() &&
      !in.query_embs->empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query embeddings have dimension " +
                    std::to_string(in.query_embs->dimension()) +
                    ", corpus embeddings " +
                    std::to_string(in.corpus_embs->dimension()));
  }
  const auto q_index = IndexById(*in.query_embs);
  std::vector<std::size_t> vec_of(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    auto it = q_index.find(queries[i].id());
    if (it == q_index.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "query '" + queries[i].id() + "' has no embedding");
    }
    vec_of[i] = it->second;
  }

  DistillSummary summary;
  summary.queries = queries.size();
  std::size_t start = 0;
  if (resume_after) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (queries[i].id() == *resume_after) {
        start = i + 1;
        break;
      }
    }
    summary.resumed = start;
  }

  const std::size_t batch = cfg.parallelism;
  for (std::size_t b = start; b < queries.size(); b += batch) {
    const std::size_t e = std::min(queries.size(), b + batch);
    std::vector<QueryResult> results(e - b);
    ParallelFor(e - b, cfg.parallelism, [&](std::size_t i) {
      const std::size_t q = b + i;
      results[i] =
          LabelOne(queries[q], (*in.query_embs)[vec_of[q]].vector, in, cfg);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].label) {
        sink(*results[i].label);
        ++summary.emitted;
      } else {
        summary.failures.push_back({queries[b + i].id(), *results[i].failure});
      }
    }
    if (on_batch) on_batch(queries[e - 1].id());
  }
  return summary;
}

nlohmann::json LabelManifest(const PipelineConfig& cfg,
                             const std::string& backend_tag) {
  return {{"manifest",
           {{"kind", "teacher_labels"},
            {"config", ToJson(cfg)},
            {"backend", backend_tag},
            {"retrieval", "euclidean top_k"},
            {"confidence_formula", kConfidenceFormula}}}};
}

std::filesystem::path CheckpointPath(const std::filesystem::path& output) {
  auto p = output;
  p += ".checkpoint";
  return p;
}

DistillSummary DistillToFile(const DistillInputs& inputs,
                             const PipelineConfig& cfg,
                             const DistillFileOptions& options) {
  const auto ckpt = CheckpointPath(options.output);
  std::optional<std::string> resume_after;
  if (options.resume && std::filesystem::exists(ckpt)) {
    auto in = OpenForRead(ckpt);
    try {
      resume_after = nlohmann::json::parse(in).at("last_query_id").get<std::string>();
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kIo, "unreadable checkpoint '" + ckpt.string() +
                                      "': " + e.what());
    }
  }
  const bool append = resume_after.has_value();
  auto out = OpenForWrite(options.output, append);
  if (!append) {
    out << LabelManifest(cfg, inputs.backend ? inputs.backend->tag() : "")
               .dump()
        << '\n';
  }
  auto summary = Distill(
      inputs, cfg,
      [&](const TeacherLabel& label) { out << ToJson(label).dump() << '\n'; },
      resume_after, [&](const std::string& last_query_id) {
        out.flush();
        if (!out) {
          throw Error(ErrorCode::kIo,
                      "failed writing '" + options.output.string() + "'");
        }
        AtomicWriteFile(ckpt, nlohmann::json{{"last_query_id", last_query_id}}
                                      .dump() +
                                  "\n");
      });
  return summary;
}

void WriteLabelFile(const std::filesystem::path& path,
                    const nlohmann::json& manifest,
                    const std::vector<TeacherLabel>& labels) {
  auto out = OpenForWrite(path);
  out << manifest.dump() << '\n';
  for (const auto& l : labels) out << ToJson(l).dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

CurateResult Curate(const embed::EmbeddingSet& query_embs,
                    const embed::EmbeddingSet& corpus_embs,
                    const PipelineConfig& cfg) {
  if (query_embs.empty() || corpus_embs.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "curate needs non-empty embeddings");
  }
  struct Pair {
    std::size_t query;
    std::size_t doc;
  };
  std::vector<embed::QualityPair<Pair>> pairs;
  pairs.reserve(query_embs.size());
  for (std::size_t q = 0; q < query_embs.size(); ++q) {
    const auto top = embed::TopKByDistance(query_embs[q].vector, corpus_embs, 1);
    pairs.push_back({query_embs[q].vector, corpus_embs[top[0].index].vector,
                     Pair{q, top[0].index}});
  }
  const auto filtered = embed::QualityFilter(pairs, cfg.quality_threshold);

  std::vector<embed::EmbeddingRecord> survivors;
  survivors.reserve(filtered.kept.size());
  std::unordered_map<std::string, std::size_t> doc_of;
  for (const auto& p : filtered.kept) {
    const auto& q = query_embs[p.payload.query];
    survivors.push_back({q.id, corpus_embs[p.payload.doc].vector});
    doc_of[q.id] = p.payload.doc;
  }

  CurateResult result;
  embed::GreedyOptions greedy;
  greedy.metric = cfg.selection_metric;
  if (!survivors.empty()) {
    result.selection = embed::GreedyDiversitySelect(
        embed::EmbeddingSet(std::move(survivors)), cfg.selection_k, greedy);
  }
  for (const auto& id : result.selection.selected_ids) {
    result.selected_doc_ids.push_back(corpus_embs[doc_of.at(id)].id);
  }
  result.manifest = {
      {"kind", "curated_selection"},
      {"algorithm", "greedy"},
      {"metric", std::string(embed::ToString(cfg.selection_metric))},
      {"quality_threshold", cfg.quality_threshold},
      {"selection_k", cfg.selection_k},
      {"seed", cfg.seed},
      {"stage_counts",
       {{"queries", query_embs.size()},
        {"paired", pairs.size()},
        {"kept", filtered.counts.kept},
        {"dropped", filtered.counts.dropped},
        {"zero_vector", filtered.counts.zero_vector},
        {"selected", result.selection.selected_ids.size()}}},
  };
  return result;
}

}  // namespace ranknexus::distill
