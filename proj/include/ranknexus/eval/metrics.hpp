#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ranknexus/core/permutation.hpp"
#include "ranknexus/eval/trec.hpp"

namespace ranknexus::eval {

enum class Gain {
  kLinear,       // g = rel (trec_eval ndcg_cut)
  kExponential,  // g = 2^rel - 1
};

std::string_view ToString(Gain g);
Gain ParseGain(std::string_view s);

// Every metric folds over query ids in sorted order. Queries judged in the
// qrels but absent from the run score 0 and count toward the means; run-only
// queries are ignored.

struct MetricResult {
  std::map<std::string, double> per_query;
  double mean = 0.0;
};

struct RecallResult {
  std::map<std::string, double> per_query;
  // Unweighted mean over queries with at least one relevant document.
  double micro = 0.0;
  // Mean over groups of the per-group query mean. Equals micro when the
  // qrels carry no grouping; ungrouped queries form singleton groups.
  double macro = 0.0;
  std::size_t groups = 0;
  // Queries with no relevant document, left out of both means.
  std::vector<std::string> excluded;
};

/// DCG@k / IDCG@k with IDCG from the query's judged grades sorted
/// descending. Zero ideal gain scores 0.
MetricResult NdcgAtK(const Qrels& qrels, const RunByQuery& run, std::size_t k,
                     Gain gain = Gain::kLinear);

/// Reciprocal rank of the first document with grade >= rel_threshold.
MetricResult Mrr(const Qrels& qrels, const RunByQuery& run,
                 int rel_threshold = 1);

/// |relevant in top k| / |relevant|.
RecallResult RecallAtK(const Qrels& qrels, const RunByQuery& run,
                       std::size_t k, int rel_threshold = 1);

/// (concordant - discordant) / (n(n-1)/2) over candidate pairs, comparing
/// where each candidate sits in the two orderings. Throws LengthMismatch,
/// TooShort (n < 2).
double KendallTau(const Permutation& a, const Permutation& b);

struct EvalConfig {
  std::vector<std::size_t> ndcg_cutoffs{10, 50};
  std::vector<std::size_t> recall_cutoffs{1, 3, 5};
  bool mrr = true;
  Gain gain = Gain::kLinear;
  int rel_threshold = 1;
  // Where Qrels::group_of came from, echoed in the report.
  std::string grouping_source = "none";
};

/// JSON report: {"config": ..., "means": {...}, "per_query": {...},
/// "excluded_from_recall": [...]}.
nlohmann::json Evaluate(const Qrels& qrels, const RunByQuery& run,
                        const EvalConfig& config);

}  // namespace ranknexus::eval
