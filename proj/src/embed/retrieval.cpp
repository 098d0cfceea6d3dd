#include "ranknexus/embed/retrieval.hpp"

#include <algorithm>

#include "ranknexus/embed/geometry.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::embed {

std::vector<Neighbor> TopKByDistance(std::span<const float> query,
                                     const EmbeddingSet& corpus,
                                     std::size_t k) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "empty corpus");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (query.size() != corpus.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query dimension " + std::to_string(query.size()) +
                    " vs corpus " + std::to_string(corpus.dimension()));
  }
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    scored.emplace_back(EuclideanDist(query, corpus[i].vector), i);
  }
  k = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(k),
                    scored.end());
  std::vector<Neighbor> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto [dist, idx] = scored[i];
    out.push_back({idx, corpus[idx].id, dist});
  }
  return out;
}

}  // namespace ranknexus::embed
