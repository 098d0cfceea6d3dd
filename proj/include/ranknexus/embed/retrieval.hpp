#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ranknexus/embed/embedding.hpp"

namespace ranknexus::embed {

struct Neighbor {
  std::size_t index = 0;
  std::string id;
  double distance = 0.0;
};

/// Exact k nearest records by Euclidean distance, ascending, ties by input
/// order; all records when k >= N. Throws DimensionMismatch,
/// EmptyCollection, InvalidArgument (k == 0).
std::vector<Neighbor> TopKByDistance(std::span<const float> query,
                                     const EmbeddingSet& corpus,
                                     std::size_t k);

}  // namespace ranknexus::embed
