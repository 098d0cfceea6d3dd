#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ranknexus/embed/geometry.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::embed {

inline constexpr double kDefaultQualityThreshold = 0.25;

/// A query/document embedding pair plus whatever the caller wants carried
/// through. The spans must outlive the pair.
template <typename Payload>
struct QualityPair {
  std::span<const float> query;
  std::span<const float> doc;
  Payload payload;
};

struct FilterCounts {
  std::size_t kept = 0;
  std::size_t dropped = 0;
  // Subset of `dropped` rejected because one side is the zero vector.
  std::size_t zero_vector = 0;
};

template <typename Payload>
struct FilterResult {
  std::vector<QualityPair<Payload>> kept;
  std::vector<double> kept_sims;
  FilterCounts counts;
  double threshold = kDefaultQualityThreshold;
};

/// Keeps exactly the pairs whose cosine similarity is >= threshold, in input
/// order. Zero-vector pairs are dropped and counted; a dimension mismatch
/// still throws.
template <typename Payload>
FilterResult<Payload> QualityFilter(std::span<const QualityPair<Payload>> pairs,
                                    double threshold) {
  FilterResult<Payload> out;
  out.threshold = threshold;
  for (const auto& p : pairs) {
    double sim;
    try {
      sim = CosineSim(p.query, p.doc);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroVector) throw;
      ++out.counts.dropped;
      ++out.counts.zero_vector;
      continue;
    }
    if (sim >= threshold) {
      out.kept.push_back(p);
      out.kept_sims.push_back(sim);
      ++out.counts.kept;
    } else {
      ++out.counts.dropped;
    }
  }
  return out;
}

template <typename Payload>
FilterResult<Payload> QualityFilter(
    const std::vector<QualityPair<Payload>>& pairs, double threshold) {
  return QualityFilter(std::span<const QualityPair<Payload>>(pairs),
                       threshold);
}

}  // namespace ranknexus::embed
