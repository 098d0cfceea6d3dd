#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ranknexus/core/types.hpp"
#include "ranknexus/distill/config.hpp"
#include "ranknexus/distill/label.hpp"
#include "ranknexus/embed/embedding.hpp"
#include "ranknexus/embed/selection.hpp"
#include "ranknexus/rerank/backend.hpp"

namespace ranknexus::distill {

struct QueryFailure {
  std::string query_id;
  std::string reason;
};

struct DistillSummary {
  std::size_t queries = 0;
  std::size_t emitted = 0;
  // Already completed according to the checkpoint.
  std::size_t resumed = 0;
  std::vector<QueryFailure> failures;
};

struct DistillInputs {
  const std::vector<Query>* queries = nullptr;
  const embed::EmbeddingSet* query_embs = nullptr;
  const embed::EmbeddingSet* corpus_embs = nullptr;
  const Corpus* corpus = nullptr;
  rerank::Backend* backend = nullptr;
};

using LabelSink = std::function<void(const TeacherLabel&)>;
// Called after each batch with the id of the last query in it.
using BatchDone = std::function<void(const std::string& last_query_id)>;

/// Teacher labeling. For each query: Euclidean top_k retrieval, listwise
/// teacher ranking through the backend, repair, confidence. Queries are
/// processed in batches of cfg.parallelism run concurrently; labels reach
/// `sink` in query order, one batch at a time. Per-query problems (backend
/// failure, unusable answer, missing document) are recorded in the summary
/// and skipped. Queries up to and including `resume_after` are skipped.
///
/// Throws InvalidArgument before any work when a query lacks an embedding
/// or dimensions disagree.
DistillSummary Distill(const DistillInputs& inputs, const PipelineConfig& cfg,
                       const LabelSink& sink,
                       const std::optional<std::string>& resume_after = {},
                       const BatchDone& on_batch = {});

/// The manifest header line written at the top of every label file.
nlohmann::json LabelManifest(const PipelineConfig& cfg,
                             const std::string& backend_tag);

struct DistillFileOptions {
  std::filesystem::path output;
  // Continue from `<output>.checkpoint` when it exists.
  bool resume = false;
};

/// Distill into a JSON-lines file: manifest header, then one label per
/// line, flushed per batch with an atomically replaced checkpoint holding
/// the last completed query id.
DistillSummary DistillToFile(const DistillInputs& inputs,
                             const PipelineConfig& cfg,
                             const DistillFileOptions& options);

std::filesystem::path CheckpointPath(const std::filesystem::path& output);

/// Writes manifest + labels (used for the budget-filtered selection).
void WriteLabelFile(const std::filesystem::path& path,
                    const nlohmann::json& manifest,
                    const std::vector<TeacherLabel>& labels);

struct CurateResult {
  embed::SelectionResult selection;
  // Top-1 document of each selected query, aligned with selection ids.
  std::vector<std::string> selected_doc_ids;
  nlohmann::json manifest;
};

/// Quality filtering then diversity selection. Every query is paired with
/// its Euclidean top-1 document; pairs under cfg.quality_threshold (cosine)
/// are dropped; the survivors, keyed by query id and represented by their
/// document vector, go through greedy diversity selection with
/// cfg.selection_k. The manifest records the count after every stage.
CurateResult Curate(const embed::EmbeddingSet& query_embs,
                    const embed::EmbeddingSet& corpus_embs,
                    const PipelineConfig& cfg);

}  // namespace ranknexus::distill
