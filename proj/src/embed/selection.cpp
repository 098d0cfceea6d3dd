#include "ranknexus/embed/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "ranknexus/embed/geometry.hpp"
#include "ranknexus/embed/rng.hpp"
#include "ranknexus/error.hpp"

namespace ranknexus::embed {

std::string_view ToString(SimilarityMetric m) {
  return m == SimilarityMetric::kCosine ? "cosine" : "euclidean";
}

SimilarityMetric ParseSimilarityMetric(std::string_view s) {
  if (s == "cosine") return SimilarityMetric::kCosine;
  if (s == "euclidean") return SimilarityMetric::kEuclidean;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown similarity metric '" + std::string(s) + "'");
}

namespace {

void CheckSelectionArgs(const EmbeddingSet& records, std::size_t k,
                        const GreedyOptions& options) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no records to select from");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (options.seed_index >= records.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "seed index " + std::to_string(options.seed_index) +
                    " out of range");
  }
}

// Norms for the cosine metric; rejects zero vectors by id.
std::vector<double> CheckedNorms(const EmbeddingSet& records,
                                 SimilarityMetric metric) {
  std::vector<double> norms(records.size(), 1.0);
  if (metric != SimilarityMetric::kCosine) return norms;
  for (std::size_t i = 0; i < records.size(); ++i) {
    norms[i] = Norm(records[i].vector);
    if (norms[i] == 0.0) {
      throw Error(ErrorCode::kZeroVector,
                  "record '" + records[i].id + "' is the zero vector", i + 1);
    }
  }
  return norms;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  void Offer(double v, std::size_t i) {
    if (v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
};

std::size_t ResolveThreads(std::size_t requested, std::size_t work) {
  std::size_t t = requested;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  // Below this many candidates a thread costs more than it saves.
  constexpr std::size_t kMinPerThread = 4096;
  return std::clamp<std::size_t>(work / kMinPerThread, 1, t);
}

}  // namespace

SelectionResult GreedyDiversitySelect(const EmbeddingSet& records,
                                      std::size_t k,
                                      const GreedyOptions& options) {
  CheckSelectionArgs(records, k, options);
  const std::size_t n = records.size();
  const std::vector<double> norms = CheckedNorms(records, options.metric);
  k = std::min(k, n);

  std::vector<double> sums(n, 0.0);
  std::vector<char> selected(n, 0);
  SelectionResult result;
  result.selected_ids.reserve(k);
  result.trace.reserve(k);

  auto pick = [&](std::size_t i, std::optional<double> avg) {
    selected[i] = 1;
    result.selected_ids.push_back(records[i].id);
    result.trace.push_back({records[i].id, i, avg});
  };
  pick(options.seed_index, std::nullopt);

  const std::size_t threads = ResolveThreads(options.threads, n);
  std::vector<Best> partial(threads);

  auto scan = [&](std::size_t last, double count, std::size_t begin,
                  std::size_t end, Best& best) {
    const auto& anchor = records[last].vector;
    for (std::size_t j = begin; j < end; ++j) {
      if (selected[j]) continue;
      double sim;
      if (options.metric == SimilarityMetric::kCosine) {
        sim = CosineFromParts(Dot(anchor, records[j].vector), norms[last],
                              norms[j]);
      } else {
        sim = -EuclideanDist(anchor, records[j].vector);
      }
      sums[j] += sim;
      best.Offer(sums[j] / count, j);
    }
  };

  for (std::size_t step = 1; step < k; ++step) {
    const std::size_t last = result.trace.back().index;
    const double count = static_cast<double>(step);
    ++result.passes;
    if (threads == 1) {
      partial[0] = Best{};
      scan(last, count, 0, n, partial[0]);
    } else {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (n + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        partial[t] = Best{};
        const std::size_t begin = std::min(n, t * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back(
            [&, t, begin, end] { scan(last, count, begin, end, partial[t]); });
      }
    }
    Best best;
    for (const Best& b : partial) {
      if (b.index != std::numeric_limits<std::size_t>::max()) {
        best.Offer(b.value, b.index);
      }
    }
    pick(best.index, best.value);
  }
  return result;
}

SelectionResult BruteForceDiversityOracle(const EmbeddingSet& records,
                                          std::size_t k,
                                          const GreedyOptions& options) {
  if (records.size() > kOracleMaxRecords) {
    throw Error(ErrorCode::kTooLarge,
                "oracle limited to " + std::to_string(kOracleMaxRecords) +
                    " records, got " + std::to_string(records.size()));
  }
  CheckSelectionArgs(records, k, options);
  CheckedNorms(records, options.metric);
  const std::size_t n = records.size();
  k = std::min(k, n);

  auto similarity = [&](std::size_t a, std::size_t b) {
    if (options.metric == SimilarityMetric::kCosine) {
      return CosineSim(records[a].vector, records[b].vector);
    }
    return -EuclideanDist(records[a].vector, records[b].vector);
  };

  std::vector<std::size_t> chosen{options.seed_index};
  SelectionResult result;
  result.selected_ids.push_back(records[options.seed_index].id);
  result.trace.push_back(
      {records[options.seed_index].id, options.seed_index, std::nullopt});

  while (chosen.size() < k) {
    ++result.passes;
    double best_avg = std::numeric_limits<double>::infinity();
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      double sum = 0.0;
      for (std::size_t s : chosen) sum += similarity(s, j);
      const double avg = sum / static_cast<double>(chosen.size());
      if (avg < best_avg) {
        best_avg = avg;
        best = j;
      }
    }
    chosen.push_back(best);
    result.selected_ids.push_back(records[best].id);
    result.trace.push_back({records[best].id, best, best_avg});
  }
  return result;
}

SelectionResult RandomSelect(const EmbeddingSet& records, std::size_t k,
                             std::uint64_t seed) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no records to select from");
  }
  if (k > records.size()) {
    throw Error(ErrorCode::kKTooLarge,
                "k = " + std::to_string(k) + " exceeds " +
                    std::to_string(records.size()) + " records");
  }
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  SeededRng rng(seed);
  SelectionResult result;
  // Partial Fisher-Yates: position i receives a uniform draw from the rest.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.Below(idx.size() - i);
    std::swap(idx[i], idx[j]);
    result.selected_ids.push_back(records[idx[i]].id);
    result.trace.push_back({records[idx[i]].id, idx[i], std::nullopt});
  }
  return result;
}

namespace {

double SquaredDistance(std::span<const float> a, std::span<const double> c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - c[i];
    acc += d * d;
  }
  return acc;
}

std::vector<std::vector<double>> KMeansPlusPlus(const EmbeddingSet& records,
                                                std::size_t k,
                                                SeededRng& rng) {
  const std::size_t n = records.size();
  auto as_centroid = [&](std::size_t i) {
    const auto& v = records[i].vector;
    return std::vector<double>(v.begin(), v.end());
  };
  std::vector<std::vector<double>> centroids;
  std::vector<char> taken(n, 0);
  std::size_t first = rng.Below(n);
  centroids.push_back(as_centroid(first));
  taken[first] = 1;

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = SquaredDistance(records[i].vector, centroids[0]);
  }
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) total += d2[i];
    }
    std::size_t next = n;
    if (total > 0.0) {
      double target = rng.Unit() * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i] || d2[i] == 0.0) continue;
        next = i;
        target -= d2[i];
        if (target < 0.0) break;
      }
    } else {
      // Every remaining record duplicates a centroid; fall back to uniform.
      std::size_t remaining = rng.Below(n - centroids.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        if (remaining-- == 0) {
          next = i;
          break;
        }
      }
    }
    taken[next] = 1;
    centroids.push_back(as_centroid(next));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i],
                       SquaredDistance(records[i].vector, centroids.back()));
    }
  }
  return centroids;
}

}  // namespace

SelectionResult KMeansCentroidSelect(const EmbeddingSet& records,
                                     std::size_t k, std::uint64_t seed,
                                     std::size_t iters) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no records to cluster");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k > records.size()) {
    throw Error(ErrorCode::kKTooLarge,
                std::to_string(k) + " clusters for " +
                    std::to_string(records.size()) + " records");
  }
  const std::size_t n = records.size();
  const std::size_t dim = records.dimension();
  SeededRng rng(seed);
  auto centroids = KMeansPlusPlus(records, k, rng);

  std::vector<std::size_t> assign(n, k);
  auto nearest_centroid = [&](std::size_t i) {
    std::size_t best = 0;
    double best_d = SquaredDistance(records[i].vector, centroids[0]);
    for (std::size_t c = 1; c < k; ++c) {
      const double d = SquaredDistance(records[i].vector, centroids[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  for (std::size_t it = 0; it < iters; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = nearest_centroid(i);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[assign[i]];
      const auto& v = records[i].vector;
      for (std::size_t d = 0; d < dim; ++d) sums[assign[i]][d] += v[d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t d = 0; d < dim; ++d) {
        centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      }
    }
  }

  SelectionResult result;
  std::vector<char> taken(n, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (assign[i] != c || taken[i]) continue;
      const double d = SquaredDistance(records[i].vector, centroids[c]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == n) {
      // Empty cluster: nearest record not yet emitted.
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const double d = SquaredDistance(records[i].vector, centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
    }
    taken[best] = 1;
    result.selected_ids.push_back(records[best].id);
    result.trace.push_back({records[best].id, best, std::nullopt});
  }
  return result;
}

}  // namespace ranknexus::embed
