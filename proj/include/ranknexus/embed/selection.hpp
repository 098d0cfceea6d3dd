#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranknexus/embed/embedding.hpp"

namespace ranknexus::embed {

enum class SimilarityMetric {
  kCosine,
  // Similarity is the negated Euclidean distance.
  kEuclidean,
};

std::string_view ToString(SimilarityMetric m);
SimilarityMetric ParseSimilarityMetric(std::string_view s);

struct SelectionStep {
  std::string id;
  std::size_t index = 0;
  // Mean similarity to the selection at the time of the pick; empty for the
  // seed and for selectors that do not score candidates.
  std::optional<double> avg_sim;
};

struct SelectionResult {
  std::vector<std::string> selected_ids;
  std::vector<SelectionStep> trace;
  // Full scans over the candidate set (greedy: k - 1).
  std::size_t passes = 0;
};

struct GreedyOptions {
  SimilarityMetric metric = SimilarityMetric::kCosine;
  std::size_t seed_index = 0;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Greedy maximum-diversity coreset selection.
///
/// Starts from `records[seed_index]` and repeatedly adds the unselected
/// record with the lowest mean similarity to everything selected so far,
/// breaking ties toward the lowest input index. Per-candidate similarity
/// sums are maintained incrementally, so each step is a single O(N d) pass
/// and the whole run is O(k N d). The parallel scan partitions candidates,
/// never a dot product, so results do not depend on `threads`.
///
/// Throws EmptyCollection, InvalidArgument (k == 0 or bad seed index) and,
/// under the cosine metric, ZeroVector naming the offending id.
SelectionResult GreedyDiversitySelect(const EmbeddingSet& records,
                                      std::size_t k,
                                      const GreedyOptions& options = {});

/// Literal replay of the greedy procedure: every step recomputes each
/// candidate's mean similarity from scratch. Test oracle; N <= 32.
SelectionResult BruteForceDiversityOracle(const EmbeddingSet& records,
                                          std::size_t k,
                                          const GreedyOptions& options = {});

inline constexpr std::size_t kOracleMaxRecords = 32;

/// Uniform sample without replacement, reproducible from `seed`.
SelectionResult RandomSelect(const EmbeddingSet& records, std::size_t k,
                             std::uint64_t seed);

/// k-means++ seeding followed by Lloyd iterations; emits, per cluster, the
/// member nearest its centroid (ties by lowest index).
SelectionResult KMeansCentroidSelect(const EmbeddingSet& records,
                                     std::size_t k, std::uint64_t seed,
                                     std::size_t iters = 50);

}  // namespace ranknexus::embed
