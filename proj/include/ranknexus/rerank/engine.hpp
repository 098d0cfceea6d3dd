#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ranknexus/core/permutation.hpp"
#include "ranknexus/core/types.hpp"
#include "ranknexus/rerank/backend.hpp"
#include "ranknexus/rerank/parse.hpp"
#include "ranknexus/rerank/prompt.hpp"

namespace ranknexus::rerank {

/// Sliding windows, always traversed from the back of the list to the front.
struct WindowConfig {
  std::size_t window_size = 20;
  std::size_t stride = 10;

  /// Throws InvalidArgument unless 1 <= stride <= window_size.
  void Validate() const;
};

/// Half-open [begin, end) 0-based windows in processing order.
std::vector<std::pair<std::size_t, std::size_t>> WindowSchedule(
    std::size_t n, const WindowConfig& window);

struct WindowRepair {
  std::size_t window = 0;  // 0-based index in processing order
  RepairEntry entry;
};

/// A model answer that could not be used even after the reminder turn.
struct Incident {
  std::size_t unit = 0;  // window index (listwise) or call index (pairwise)
  std::string detail;
};

struct RerankOutcome {
  // Reordered ids; first_stage_scores holds n - r + 1 for 1-based rank r.
  CandidateList list;
  // Final order as a permutation of the input candidates.
  Permutation perm;
  std::vector<WindowRepair> repairs;
  std::vector<Incident> incidents;
  std::size_t backend_calls = 0;
  std::size_t windows = 0;
};

struct ListwiseOptions {
  WindowConfig window;
  RerankMode mode = RerankMode::kText;
  // Any repair or unusable answer becomes a StrictRepair/Unparseable error.
  bool strict = false;
  RetryPolicy retry;
};

/// Listwise reranking with back-to-front sliding windows. Each window is
/// prompted, parsed, repaired and applied in place before the next one is
/// built, so strong candidates climb toward the front. A window whose
/// answer has no bracketed ids even after one reminder keeps its order and
/// records an Incident. Windows of a single candidate are skipped.
///
/// Throws MissingDoc, InvalidArgument (empty list, bad window, images with a
/// text-only backend) and BackendError whose position is the 1-based window
/// number.
RerankOutcome RerankListwise(const Query& query, const CandidateList& candidates,
                             const Corpus& corpus, Backend& backend,
                             const ListwiseOptions& options = {});

struct PairwiseOptions {
  // Query every ordered pair and aggregate wins instead of yes/no relevance.
  bool tournament = false;
  bool strict = false;
  RetryPolicy retry;
};

/// Pairwise reranking. Relevance mode asks once per candidate and moves the
/// "Yes" answers ahead of the "No" answers, keeping input order inside each
/// group; an unusable answer counts as "No". Tournament mode builds a win
/// matrix from all n(n-1) ordered comparisons and ranks by win count.
RerankOutcome RerankPairwise(const Query& query, const CandidateList& candidates,
                             const Corpus& corpus, Backend& backend,
                             const PairwiseOptions& options = {});

}  // namespace ranknexus::rerank
